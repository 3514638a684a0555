#include "bloch/weinorman.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bloch/algebra.hpp"
#include "bloch/ode.hpp"

namespace bloch {

singularity_error::singularity_error(double time, std::vector<WnSample> partial)
    : solver_error("factorization singularity: cos(y2) vanished" +
                   (std::isnan(time) ? std::string()
                                     : " near t = " + std::to_string(time))),
      time_(time),
      partial_(std::move(partial)) {}

namespace {

// Velocities without the singularity guard; caller checks cos(y2).
Vec3 wn_velocities(const WeiNormanParams& y, double omega, double delta,
                   double cos_y2) {
  const double y3dot = -delta * std::cos(y.y1) / cos_y2;
  const double y2dot = -delta * std::sin(y.y1);
  const double y1dot = omega - y3dot * std::sin(y.y2);
  return {y1dot, y2dot, y3dot};
}

}  // namespace

Vec3 wn_rhs(const WeiNormanParams& y, double omega, double delta) {
  const double c2 = std::cos(y.y2);
  if (std::abs(c2) <= kWnSingularThreshold)
    throw singularity_error(std::numeric_limits<double>::quiet_NaN(), {});
  return wn_velocities(y, omega, delta, c2);
}

WnTrajectory wn_solve(const DriveConfig& cfg, std::span<const double> times,
                      double tol) {
  cfg.validate();
  auto rhs = [&cfg](const State3& s, State3& dsdt, double t) {
    const double c2 = std::cos(s[1]);
    if (std::abs(c2) <= kWnSingularThreshold)
      throw singularity_error(t, {});
    const double w = detail::omega_eval_clamped(cfg, t);
    const double d = (cfg.detuning_mode == DetuningMode::constant)
                         ? cfg.detuning_peak
                         : cfg.detuning_peak * w / cfg.envelope.peak;
    const Vec3 v = wn_velocities({s[0], s[1], s[2]}, w, d, c2);
    dsdt = {v[0], v[1], v[2]};
  };

  WnTrajectory traj;
  traj.samples.reserve(times.size());
  try {
    solve_observed(rhs, {0.0, 0.0, 0.0}, times, tol,
                   [&traj](double t, const State3& s) {
                     traj.samples.push_back({t, {s[0], s[1], s[2]}});
                   });
  } catch (const singularity_error& e) {
    throw singularity_error(e.time(), std::move(traj.samples));
  }
  return traj;
}

WnTrajectory wn_solve(const DriveConfig& cfg, int n_samples, double tol) {
  const auto ts = sample_grid(cfg, n_samples);
  return wn_solve(cfg, ts, tol);
}

Propagator3 wn_propagator(const WeiNormanParams& y) {
  const Mat3 e1 = sylvester_exp(y.y1 * adjoint_generator(1));
  const Mat3 e2 = sylvester_exp(y.y2 * adjoint_generator(2));
  const Mat3 e3 = sylvester_exp(y.y3 * adjoint_generator(3));
  return e1 * (e2 * e3);
}

}  // namespace bloch
