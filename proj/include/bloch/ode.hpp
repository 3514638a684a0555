#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace bloch {

using State3 = std::array<double, 3>;

// Right-hand side callback: rhs(y, dydt, t).
using Rhs3 = std::function<void(const State3&, State3&, double)>;

// Integrates dy/dt = rhs(y, t) with an adaptive dense-output Runge-Kutta 5(4)
// scheme, invoking observer(t, y) at every requested time. times must be
// sorted ascending; times.front() is the initial time and is observed with
// y0. Local error per step is controlled to tol (absolute and relative).
// Throws solver_error on step-size underflow or iteration blow-up; exceptions
// from rhs propagate, with all samples observed so far already delivered.
void solve_observed(const Rhs3& rhs, const State3& y0,
                    std::span<const double> times, double tol,
                    const std::function<void(double, const State3&)>& observer);

// Convenience wrapper returning the state at every requested time.
std::vector<State3> solve_at_times(const Rhs3& rhs, const State3& y0,
                                   std::span<const double> times, double tol);

}  // namespace bloch
