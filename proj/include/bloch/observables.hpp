#pragma once

#include <complex>
#include <vector>

#include "bloch/mat.hpp"
#include "bloch/propagators.hpp"

namespace bloch {

// Density-matrix <-> coherence-vector conversion and conserved-length
// monitoring in the drive-aligned frame.

// Two-level density matrix. rho10 is implied by Hermiticity.
struct DensityMatrix2 {
  double rho00 = 1.0;
  double rho11 = 0.0;
  std::complex<double> rho01{0.0, 0.0};
};

// Generator expectation values of a valid density matrix:
//   g1 = 2 Re rho01, g2 = -2 Im rho01, g3 = rho00 - rho11.
// Throws invalid_state_error when the trace deviates from 1 beyond 1e-10 or
// positivity fails beyond 1e-12.
CoherenceVector density_to_bloch(const DensityMatrix2& rho);

// Inverse map rho = I/2 + (1/2) sum g_a G_a. Throws unphysical_state_error
// for vectors outside the unit ball beyond 1e-10.
DensityMatrix2 bloch_to_density(const CoherenceVector& g);

// Tr(rho^2) = (1 + |G|^2) / 2.
double purity(const DensityMatrix2& rho);

struct ConservationSample {
  double t = 0.0;
  double c1 = 0.0;     // F1^2
  double c23 = 0.0;    // F2^2 + F3^2
  double total = 0.0;  // c1 + c23
};

// Drift diagnostics for the two separately conserved lengths. Diagnostic
// only: feeding a trajectory whose drive breaks the shared-shape premise
// simply reports nonzero drift.
struct ConservationReport {
  std::vector<ConservationSample> samples;
  double c1_drift = 0.0;     // max |c1(t) - c1(t0)|
  double c23_drift = 0.0;
  double total_drift = 0.0;
};

// Expects a trajectory already expressed in the aligned frame.
ConservationReport conservation_monitor(const Trajectory& f_frame_traj);

}  // namespace bloch
