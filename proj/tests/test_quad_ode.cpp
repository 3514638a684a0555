#include <doctest.h>

#include <cmath>
#include <vector>

#include "bloch/errors.hpp"
#include "bloch/ode.hpp"
#include "bloch/quad.hpp"
#include "oracles.hpp"

using namespace bloch;

TEST_CASE("simpson is exact for cubics") {
  const int n = 11;
  const double h = 0.1;
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    f[i] = 2.0 - x + 3.0 * x * x - 0.5 * x * x * x;
  }
  // Antiderivative 2x - x^2/2 + x^3 - x^4/8 at x = 1.
  CHECK(simpson(f, h) == doctest::Approx(2.0 - 0.5 + 1.0 - 0.125).epsilon(1e-14));
  CHECK_THROWS_AS(simpson(std::vector<double>(4, 1.0), h), std::invalid_argument);
}

TEST_CASE("cumulative simpson tracks the running integral at fourth order") {
  // Quadratics are exact at every node, including the half-panel odd nodes.
  {
    const int n = 9;
    const double h = 0.25;
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
      const double x = i * h;
      f[i] = 1.0 + x * x;
    }
    const auto cum = cumulative_simpson(f, h);
    for (int i = 0; i < n; ++i) {
      const double x = i * h;
      CHECK(cum[i] == doctest::Approx(x + x * x * x / 3.0).epsilon(1e-14));
    }
  }
  // Smooth non-polynomial integrand: error shrinks like h^4.
  double err_coarse = 0.0, err_fine = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const int n = pass == 0 ? 101 : 201;
    const double h = 1.0 / (n - 1);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = std::exp(std::sin(3.0 * i * h));
    const auto cum = cumulative_simpson(f, h);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const double exact = oracle::simpson_fn(
          [](double x) { return std::exp(std::sin(3.0 * x)); }, 0.0, i * h,
          2001);
      err = std::max(err, std::abs(cum[i] - exact));
    }
    (pass == 0 ? err_coarse : err_fine) = err;
  }
  CHECK(err_fine < err_coarse / 10.0);  // at least ~h^3.3, expect h^4
  CHECK(err_fine < 1e-8);
}

TEST_CASE("adaptive solver reproduces closed forms at sample times") {
  // Fixed-axis rotation with a time-dependent rate.
  auto rot = [](const State3& y, State3& dydt, double t) {
    const double w = 2.0 + std::sin(5.0 * t);
    dydt[0] = 0.0;
    dydt[1] = -w * y[2];
    dydt[2] = w * y[1];
  };
  std::vector<double> times;
  for (int i = 0; i <= 100; ++i) times.push_back(i * 0.02);
  const auto traj = solve_at_times(rot, {0.0, 0.0, 1.0}, times, 1e-11);
  REQUIRE(traj.size() == times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const double angle = 2.0 * t + (1.0 - std::cos(5.0 * t)) / 5.0;
    CHECK(std::abs(traj[i][1] + std::sin(angle)) < 1e-9);
    CHECK(std::abs(traj[i][2] - std::cos(angle)) < 1e-9);
  }

  // Pure decay.
  auto decay = [](const State3& y, State3& dydt, double) {
    dydt = {-0.7 * y[0], -1.3 * y[1], -2.0 * y[2]};
  };
  const auto d = solve_at_times(decay, {1.0, 1.0, 1.0}, times, 1e-12);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(d[i][0] - std::exp(-0.7 * times[i])) < 1e-10);
    CHECK(std::abs(d[i][2] - std::exp(-2.0 * times[i])) < 1e-10);
  }
}

TEST_CASE("solver input validation and edge cases") {
  auto rhs = [](const State3& y, State3& dydt, double) { dydt = y; };
  CHECK_THROWS_AS(solve_at_times(rhs, {1, 0, 0}, std::vector<double>{0.0, 1.0}, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      solve_at_times(rhs, {1, 0, 0}, std::vector<double>{0.0, 1.0, 0.5}, 1e-8),
      std::invalid_argument);
  const auto single = solve_at_times(rhs, {1, 2, 3}, std::vector<double>{0.0}, 1e-8);
  REQUIRE(single.size() == 1);
  CHECK(single[0][1] == 2.0);
}

TEST_CASE("tightening the tolerance tightens the answer") {
  auto rhs = [](const State3& y, State3& dydt, double t) {
    const double w = 4.0 * std::cos(3.0 * t);
    dydt[0] = 0.0;
    dydt[1] = -w * y[2];
    dydt[2] = w * y[1];
  };
  std::vector<double> times{0.0, 2.0};
  const double angle = 4.0 * std::sin(6.0) / 3.0;
  double errs[2];
  const double tols[2] = {1e-6, 1e-11};
  for (int k = 0; k < 2; ++k) {
    const auto r = solve_at_times(rhs, {0.0, 0.0, 1.0}, times, tols[k]);
    errs[k] = std::abs(r[1][2] - std::cos(angle));
  }
  CHECK(errs[1] < errs[0]);
  CHECK(errs[1] < 1e-9);
}
