#pragma once

#include <span>
#include <vector>

#include "bloch/drive.hpp"
#include "bloch/errors.hpp"
#include "bloch/mat.hpp"
#include "bloch/propagators.hpp"

namespace bloch {

// Product-of-exponentials factorization of the propagator,
//   M(t) = exp(y1 F1) exp(y2 F2) exp(y3 F3),
// with F_a the adjoint generators and y_a(t) solving a reduced ODE system.
// The factorization is valid while cos(y2) stays away from zero.

struct WeiNormanParams {
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;
};

inline constexpr double kWnSingularThreshold = 1e-6;

struct WnSample {
  double t = 0.0;
  WeiNormanParams y;
};

// Raised when |cos y2| falls to the singular threshold. Carries the offending
// time (NaN when unknown) and the partial trajectory accumulated so far.
class singularity_error : public solver_error {
 public:
  singularity_error(double time, std::vector<WnSample> partial);
  double time() const { return time_; }
  const std::vector<WnSample>& partial() const { return partial_; }

 private:
  double time_;
  std::vector<WnSample> partial_;
};

// Parameter velocities for drive values (Omega, Delta), from the analytic
// inverse of the factorization system:
//   y3' = -Delta cos(y1) / cos(y2)
//   y2' = -Delta sin(y1)
//   y1' = Omega - y3' sin(y2)
// Throws singularity_error when |cos y2| <= kWnSingularThreshold.
Vec3 wn_rhs(const WeiNormanParams& y, double omega, double delta);

struct WnTrajectory {
  std::vector<WnSample> samples;
};

// Integrates wn_rhs from y(t0) = (0,0,0) so the propagator starts at the
// identity. On a singularity the error carries the samples reached so far.
WnTrajectory wn_solve(const DriveConfig& cfg, std::span<const double> times,
                      double tol);
WnTrajectory wn_solve(const DriveConfig& cfg, int n_samples = 201,
                      double tol = 1e-10);

// The ordered product of exponentials for the given parameters.
Propagator3 wn_propagator(const WeiNormanParams& y);

}  // namespace bloch
