#include "bloch/ode.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <stdexcept>

#include "bloch/errors.hpp"

namespace bloch {

namespace odeint = boost::numeric::odeint;

void solve_observed(const Rhs3& rhs, const State3& y0,
                    std::span<const double> times, double tol,
                    const std::function<void(double, const State3&)>& observer) {
  if (times.empty()) return;
  if (!(tol > 0.0)) throw std::invalid_argument("ode tolerance must be > 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] >= times[i - 1]))
      throw std::invalid_argument("ode sample times must be sorted ascending");

  observer(times.front(), y0);
  if (times.size() == 1) return;

  const double t0 = times.front();
  const double tf = times.back();
  const double span = tf - t0;
  if (span <= 0.0) {
    for (std::size_t i = 1; i < times.size(); ++i) observer(times[i], y0);
    return;
  }

  auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<State3>());
  stepper.initialize(y0, t0, span * 1e-3);

  const double t_eps = span * 1e-13;
  const double min_step = span * 1e-15;
  const std::size_t max_steps = 50'000'000;

  std::size_t idx = 1;
  std::size_t steps = 0;
  State3 y{};
  while (idx < times.size()) {
    // Serve every sample already covered by the last accepted step.
    while (idx < times.size() && times[idx] <= stepper.current_time() + t_eps) {
      stepper.calc_state(std::min(times[idx], stepper.current_time()), y);
      observer(times[idx], y);
      ++idx;
    }
    if (idx >= times.size()) break;

    if (++steps > max_steps)
      throw solver_error("ode solver exceeded the step budget");
    if (stepper.current_time_step() < min_step)
      throw solver_error("ode solver step size underflow (stiffness?)");
    // Never step past the final sample; stages then stay inside the window.
    if (stepper.current_time() + stepper.current_time_step() > tf)
      stepper.initialize(stepper.current_state(), stepper.current_time(),
                         tf - stepper.current_time());
    stepper.do_step(rhs);
  }
}

std::vector<State3> solve_at_times(const Rhs3& rhs, const State3& y0,
                                   std::span<const double> times, double tol) {
  std::vector<State3> out;
  out.reserve(times.size());
  solve_observed(rhs, y0, times, tol,
                 [&out](double, const State3& y) { out.push_back(y); });
  return out;
}

}  // namespace bloch
