#include <doctest.h>

#include <cmath>

#include "bloch/drive.hpp"
#include "bloch/propagators.hpp"
#include "bloch/weinorman.hpp"
#include "oracles.hpp"

using namespace bloch;

namespace {

DriveConfig sin2_drive(double area, double delta0) {
  DriveConfig cfg;
  cfg.envelope = PulseEnvelope::sin_squared(2.0 * area, 0.5, 1.0);
  cfg.t0 = 0.0;
  cfg.tf = 1.0;
  cfg.detuning_peak = delta0;
  return cfg;
}

// Forward factorization matrix W with W ydot = (Omega, 0, -Delta).
Mat3 forward_w(const WeiNormanParams& y) {
  Mat3 w;
  w(0, 0) = 1.0;
  w(0, 2) = std::sin(y.y2);
  w(1, 1) = std::cos(y.y1);
  w(1, 2) = -std::cos(y.y2) * std::sin(y.y1);
  w(2, 1) = std::sin(y.y1);
  w(2, 2) = std::cos(y.y1) * std::cos(y.y2);
  return w;
}

// Propagator columns from the reference integrator applied to basis vectors.
Mat3 reference_propagator(const DriveConfig& cfg, double tol = 1e-11) {
  Mat3 r;
  for (int c = 0; c < 3; ++c) {
    Vec3 e;
    e[c] = 1.0;
    const auto traj = integrate_reference(cfg, e, tol, 2);
    for (int i = 0; i < 3; ++i) r(i, c) = traj.back().g[i];
  }
  return r;
}

}  // namespace

TEST_CASE("parameter velocities solve the factorization system") {
  // Resonance from the origin: y1 carries the whole drive.
  const Vec3 at_res = wn_rhs({0.0, 0.0, 0.0}, 1.7, 0.0);
  CHECK(at_res[0] == doctest::Approx(1.7));
  CHECK(at_res[1] == 0.0);
  CHECK(at_res[2] == 0.0);

  CHECK(max_abs(wn_rhs({0.4, -0.2, 1.0}, 0.0, 0.0)) == 0.0);

  // Multiply back by the forward matrix.
  for (int trial = 0; trial < 200; ++trial) {
    const WeiNormanParams y{oracle::uniform(-3, 3), oracle::uniform(-1.4, 1.4),
                            oracle::uniform(-3, 3)};
    const double w = oracle::uniform(0.0, 3.0), d = oracle::uniform(-2.0, 2.0);
    const Vec3 ydot = wn_rhs(y, w, d);
    const Vec3 rhs = forward_w(y) * ydot;
    CHECK(std::abs(rhs[0] - w) < 1e-12);
    CHECK(std::abs(rhs[1]) < 1e-12);
    CHECK(std::abs(rhs[2] + d) < 1e-12);
  }

  CHECK_THROWS_AS(wn_rhs({0.0, M_PI / 2, 0.0}, 1.0, 1.0), singularity_error);
}

TEST_CASE("factorized propagator from the parameters") {
  CHECK(max_abs(wn_propagator({0, 0, 0}) - Mat3::identity()) == 0.0);

  for (double theta : {0.4, -2.0}) {
    const Mat3 m = wn_propagator({theta, 0.0, 0.0});
    CHECK(m(0, 0) == doctest::Approx(1.0));
    CHECK(m(1, 1) == doctest::Approx(std::cos(theta)));
    CHECK(m(1, 2) == doctest::Approx(-std::sin(theta)));
    CHECK(m(2, 1) == doctest::Approx(std::sin(theta)));
  }

  for (int trial = 0; trial < 100; ++trial) {
    const Mat3 m = wn_propagator({oracle::uniform(-3, 3), oracle::uniform(-3, 3),
                                  oracle::uniform(-3, 3)});
    CHECK(max_abs(transpose(m) * m - Mat3::identity()) < 1e-12);
    CHECK(det(m) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("solving the parameters: resonance reduces to the pulse area") {
  const DriveConfig res = sin2_drive(M_PI / 2, 0.0);
  const auto wn = wn_solve(res, 41, 1e-11);
  REQUIRE(wn.samples.size() == 41);
  for (const auto& s : wn.samples) {
    CHECK(s.y.y1 == doctest::Approx(pulse_area(res, s.t)).epsilon(1e-9));
    CHECK(std::abs(s.y.y2) < 1e-12);
    CHECK(std::abs(s.y.y3) < 1e-12);
  }

  // Zero drive: parameters stay at the origin.
  DriveConfig z;
  z.envelope = PulseEnvelope::constant(0.0);
  z.t0 = 0.0;
  z.tf = 1.0;
  const auto zero = wn_solve(z, 11, 1e-10);
  for (const auto& s : zero.samples)
    CHECK(max_abs(Vec3{s.y.y1, s.y.y2, s.y.y3}) < 1e-13);
}

TEST_CASE("factorization matches the reference propagator off resonance") {
  const DriveConfig cfg = sin2_drive(M_PI / 2, 0.1 * M_PI);
  const auto wn = wn_solve(cfg, 21, 1e-11);
  const Mat3 m = wn_propagator(wn.samples.back().y);
  const Mat3 ref = reference_propagator(cfg);
  CHECK(max_abs(m - ref) < 1e-6);

  // Along the trajectory the velocity magnitudes reproduce the detuning.
  for (const auto& s : wn.samples) {
    if (s.t == cfg.t0) continue;
    const double w = omega_at(cfg, s.t), d = delta_at(cfg, s.t);
    const Vec3 ydot = wn_rhs(s.y, w, d);
    const double lhs = std::sqrt(ydot[1] * ydot[1] + ydot[2] * ydot[2] *
                                 std::cos(s.y.y2) * std::cos(s.y.y2));
    CHECK(std::abs(lhs - std::abs(d)) < 1e-8);
  }
}

TEST_CASE("resonant factorization equals the first-order magnus propagator") {
  const DriveConfig res = sin2_drive(M_PI / 2, 0.0);
  const auto wn = wn_solve(res, 11, 1e-11);
  const Mat3 m = wn_propagator(wn.samples.back().y);
  const Mat3 magnus = magnus_propagator(res, 1.0, 1);
  CHECK(max_abs(m - magnus) < 1e-8);
}

TEST_CASE("gimbal crossing raises with the offending time and partial data") {
  // Equal constant drive and detuning: the rotation orbit of the third basis
  // vector passes through the first axis, where the factorization breaks.
  DriveConfig cfg;
  cfg.envelope = PulseEnvelope::constant(2.0);
  cfg.t0 = 0.0;
  cfg.tf = 2.0;
  cfg.detuning_peak = 2.0;
  const double t_sing = M_PI / std::hypot(2.0, 2.0);

  bool hit = false;
  try {
    wn_solve(cfg, 81, 1e-10);
  } catch (const singularity_error& e) {
    hit = true;
    CHECK(e.time() == doctest::Approx(t_sing).epsilon(0.02));
    CHECK(!e.partial().empty());
    for (const auto& s : e.partial()) CHECK(s.t < t_sing + 0.05);
  }
  CHECK(hit);
}
