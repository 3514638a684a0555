#pragma once

#include <utility>
#include <vector>

#include "bloch/mat.hpp"

namespace bloch {

// Pulse envelopes and detuning laws for the driven two-level system, plus the
// rotated frame aligned with the instantaneous drive axis.

enum class PulseShape { constant, gaussian, sin_squared, sampled };

struct PulseEnvelope {
  PulseShape shape = PulseShape::constant;
  double peak = 0.0;    // Omega0, >= 0
  double center = 0.0;  // t_c for gaussian / sin_squared
  double width = 0.0;   // gaussian: standard deviation; sin_squared: duration
  std::vector<std::pair<double, double>> samples;  // sampled shape: (t, Omega)

  static PulseEnvelope constant(double peak);
  static PulseEnvelope gaussian(double peak, double center, double width);
  static PulseEnvelope sin_squared(double peak, double center, double width);
  static PulseEnvelope sampled(std::vector<std::pair<double, double>> samples);
};

enum class DetuningMode {
  constant,      // Delta(t) = Delta0
  proportional,  // Delta(t) = Delta0 * Omega(t) / Omega0 (shared shape)
};

struct DriveConfig {
  PulseEnvelope envelope;
  DetuningMode detuning_mode = DetuningMode::constant;
  double detuning_peak = 0.0;  // Delta0
  double t0 = 0.0;
  double tf = 1.0;
  // Bare level energies. They only contribute an identity term to the
  // Hamiltonian and never affect the dynamics; recorded for completeness.
  double level_energy_1 = 0.0;
  double level_energy_2 = 0.0;

  // Throws config_error when the drive definition is malformed (negative
  // peak, empty window, non-increasing sample grid, sampled grid not
  // covering the window, proportional mode with zero peak).
  void validate() const;
};

// Envelope value at time t. Analytic shapes evaluate everywhere; the sampled
// shape interpolates linearly inside its grid and throws out_of_domain_error
// outside it.
double omega_at(const DriveConfig& cfg, double t);

// Detuning value at time t.
double delta_at(const DriveConfig& cfg, double t);

// Accumulated area int_{t0}^{t} Omega dt', evaluated in closed form
// (piecewise-linear exact for sampled grids). Requires t >= t0.
double pulse_area(const DriveConfig& cfg, double t);

// Copy of cfg with the peak rescaled so that pulse_area(tf) == target.
DriveConfig with_pulse_area(const DriveConfig& cfg, double target);

// Zero-envelope copy of cfg (same window and detuning mode, pulse off).
DriveConfig without_pulse(const DriveConfig& cfg);

// Equation-of-motion matrix for torque (Omega, 0, -Delta):
//   [[0, Delta, 0], [-Delta, 0, -Omega], [0, Omega, 0]].
Mat3 g_matrix(double omega, double delta);

struct FrameCoefficients {
  double epsilon = 0.0;      // sqrt(Omega^2 + Delta^2)
  double omega_ratio = 0.0;  // Omega / epsilon
  double delta_ratio = 0.0;  // Delta / epsilon
};

// Frame coefficients at a drive point. Throws degenerate_frame_error when
// Omega and Delta are both zero.
FrameCoefficients f_frame_coeffs(double omega, double delta);

// Frame coefficients from the configured peaks (Omega0, Delta0). Under
// proportional detuning these are the coefficients at every time.
FrameCoefficients f_frame_coeffs(const DriveConfig& cfg);

// Orthogonal change of basis into the drive-aligned frame:
//   F1 = (Omega/eps) G1 - (Delta/eps) G3
//   F2 = G2
//   F3 = (Delta/eps) G1 + (Omega/eps) G3
Vec3 to_f_frame(const Vec3& g, const FrameCoefficients& c);

// Inverse of to_f_frame (the transpose map).
Vec3 from_f_frame(const Vec3& f, const FrameCoefficients& c);

namespace detail {
// Envelope evaluation for integrator callbacks: identical to omega_at except
// that sampled grids clamp to their end values instead of throwing, so that
// round-off excursions at the window edge stay harmless.
double omega_eval_clamped(const DriveConfig& cfg, double t);
}  // namespace detail

}  // namespace bloch
