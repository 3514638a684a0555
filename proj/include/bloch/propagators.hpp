#pragma once

#include <span>
#include <vector>

#include "bloch/drive.hpp"
#include "bloch/mat.hpp"

namespace bloch {

// Coherence-vector propagation along four routes: adaptive numerical
// reference, first- and third-order Magnus with spectral exponentiation,
// and the closed-form drive-aligned frame.

// A closed-system propagator is special-orthogonal: R^T R = I, det R = 1.
using Propagator3 = Mat3;

struct TrajectoryPoint {
  double t = 0.0;
  Vec3 g;
};
using Trajectory = std::vector<TrajectoryPoint>;

// Accumulated drive integrals entering the exponent. With relative time
// tau = t' - t0 and A(t) = int Omega dtau:
//   omega_prime = A(t)
//   delta_prime = int Delta dtau
//   lambda0 = (Delta/2) iint (Omega_1 - Omega_2)
//   lambda1 = -(Delta/6) iiint (Omega_1 (Omega_2 - 2 Omega_3) + Omega_2 Omega_3)
//   lambda2 = -(Delta^2/6) iiint (Omega_1 - 2 Omega_2 + Omega_3)
// over the time-ordered simplices, all reduced to chains of cumulative 1D
// integrals on one shared uniform grid.
struct MagnusTerms {
  double omega_prime = 0.0;
  double delta_prime = 0.0;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  double eta() const { return delta_prime + lambda1; }
  double zeta() const { return omega_prime + lambda2; }
  double xi() const;
};

// Quadrature grid size used when a grid_points argument is 0: the value of
// BLOCH_MAGNUS_GRID if set (rounded up to odd), otherwise 2001. Throws
// config_error on an unparsable or out-of-range override.
int default_magnus_grid();

// Reference trajectory: adaptive integration of dG/dt = g(t) G at the given
// sample times (times.front() must equal cfg.t0). Local error per step <= tol.
Trajectory integrate_reference(const DriveConfig& cfg, const Vec3& g0, double tol,
                               std::span<const double> times);

// Same, on a uniform grid of n_samples points spanning the window.
Trajectory integrate_reference(const DriveConfig& cfg, const Vec3& g0,
                               double tol = 1e-10, int n_samples = 201);

// Uniformly spaced sample times over the configured window.
std::vector<double> sample_grid(const DriveConfig& cfg, int n_samples);

// Accumulated terms at time t, via composite-Simpson quadrature on a fresh
// uniform grid of grid_points nodes over [t0, t]. grid_points must be odd
// and >= 3 (0 selects default_magnus_grid()). Under proportional detuning
// the generator commutes with itself at different times and every lambda
// vanishes identically.
MagnusTerms magnus_terms(const DriveConfig& cfg, double t, int grid_points = 0);

// exp(P) for a real antisymmetric P, assembled from its eigenvalues
// {0, +i xi, -i xi}; reduces to I + P + P^2/2 as xi -> 0. Throws
// std::invalid_argument when P is not antisymmetric within 1e-12.
Propagator3 sylvester_exp(const Mat3& p);

// The exponent matrix for the requested order (1 or 3):
//   [[0, eta, lambda0], [-eta, 0, -zeta], [-lambda0, zeta, 0]]
// with lambda0 = lambda1 = lambda2 = 0 at order 1.
Mat3 magnus_matrix(const MagnusTerms& terms, int order);

// Propagator over [t0, t] of the requested order, computed fresh at t.
Propagator3 magnus_propagator(const DriveConfig& cfg, double t, int order,
                              int grid_points = 0);

// Trajectory from one cumulative quadrature grid spanning the whole window;
// the samples are nodes of that grid, so every point matches a fresh
// per-time computation up to quadrature error.
Trajectory magnus_trajectory(const DriveConfig& cfg, const Vec3& g0, int order,
                             int n_samples = 201, int grid_points = 0);

// Closed-form propagator in the drive-aligned frame,
//   [[1, 0, 0], [0, cos e', -sin e'], [0, sin e', cos e']],
// with e' the accumulated sqrt(Omega^2 + Delta^2). Requires proportional
// detuning or exact resonance; otherwise throws mode_mismatch_error.
Propagator3 f_frame_propagator(const DriveConfig& cfg, double t);

// Lab-frame trajectory driven through the aligned frame: transform, rotate,
// transform back. Same mode requirements as f_frame_propagator.
Trajectory f_frame_trajectory(const DriveConfig& cfg, const Vec3& g0,
                              int n_samples = 201);

}  // namespace bloch
