#include "bloch/dissipation.hpp"

#include <cmath>
#include <stdexcept>

#include "bloch/ode.hpp"

namespace bloch {

void RelaxationRates::validate() const {
  for (double r : {gamma01_pop, gamma10_pop, gamma01_shift, gamma01_deph})
    if (!(r >= 0.0) || !std::isfinite(r))
      throw std::invalid_argument("relaxation rates must be finite and >= 0");
}

Mat3 relaxation_matrix(double omega, double delta, const RelaxationRates& rates) {
  rates.validate();
  Mat3 a;
  a(0, 0) = -rates.gamma01_pop;
  a(0, 1) = delta - rates.gamma01_shift;
  a(1, 0) = -delta + rates.gamma01_shift;
  a(1, 1) = -rates.gamma10_pop;
  a(1, 2) = -omega;
  a(2, 1) = omega;
  a(2, 2) = -2.0 * rates.gamma01_deph;
  return a;
}

Vec3 dissipative_rhs(const Vec3& g, double omega, double delta,
                     const RelaxationRates& rates) {
  return relaxation_matrix(omega, delta, rates) * g;
}

Trajectory integrate_dissipative(const DriveConfig& cfg, const RelaxationRates& rates,
                                 const Vec3& g0, double tol,
                                 std::span<const double> times) {
  cfg.validate();
  rates.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!std::isfinite(g0[0]) || !std::isfinite(g0[1]) || !std::isfinite(g0[2]))
    throw std::invalid_argument("initial state must be finite");
  auto rhs = [&cfg, &rates](const State3& y, State3& dydt, double t) {
    const double w = detail::omega_eval_clamped(cfg, t);
    const double d = (cfg.detuning_mode == DetuningMode::constant)
                         ? cfg.detuning_peak
                         : cfg.detuning_peak * w / cfg.envelope.peak;
    const double shift = d - rates.gamma01_shift;
    dydt[0] = -rates.gamma01_pop * y[0] + shift * y[1];
    dydt[1] = -shift * y[0] - rates.gamma10_pop * y[1] - w * y[2];
    dydt[2] = w * y[1] - 2.0 * rates.gamma01_deph * y[2];
  };
  const auto states = solve_at_times(rhs, {g0[0], g0[1], g0[2]}, times, tol);
  Trajectory out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    out[i] = {times[i], {states[i][0], states[i][1], states[i][2]}};
  return out;
}

Trajectory integrate_dissipative(const DriveConfig& cfg, const RelaxationRates& rates,
                                 const Vec3& g0, double tol, int n_samples) {
  const auto ts = sample_grid(cfg, n_samples);
  return integrate_dissipative(cfg, rates, g0, tol, ts);
}

}  // namespace bloch
