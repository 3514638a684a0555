#include "bloch/propagators.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "bloch/errors.hpp"
#include "bloch/ode.hpp"
#include "bloch/quad.hpp"

namespace bloch {

double MagnusTerms::xi() const {
  const double e = eta(), z = zeta();
  return std::sqrt(lambda0 * lambda0 + z * z + e * e);
}

int default_magnus_grid() {
  const char* env = std::getenv("BLOCH_MAGNUS_GRID");
  if (env == nullptr || *env == '\0') return 2001;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 3 || v > 100'000'000)
    throw config_error("BLOCH_MAGNUS_GRID must be an integer >= 3");
  return static_cast<int>(v % 2 == 0 ? v + 1 : v);
}

std::vector<double> sample_grid(const DriveConfig& cfg, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("need at least 2 sample times");
  std::vector<double> ts(n_samples);
  const double h = (cfg.tf - cfg.t0) / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i) ts[i] = cfg.t0 + h * i;
  ts.back() = cfg.tf;
  return ts;
}

Trajectory integrate_reference(const DriveConfig& cfg, const Vec3& g0, double tol,
                               std::span<const double> times) {
  cfg.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!std::isfinite(g0[0]) || !std::isfinite(g0[1]) || !std::isfinite(g0[2]))
    throw std::invalid_argument("initial state must be finite");
  auto rhs = [&cfg](const State3& y, State3& dydt, double t) {
    const double w = detail::omega_eval_clamped(cfg, t);
    const double d = (cfg.detuning_mode == DetuningMode::constant)
                         ? cfg.detuning_peak
                         : cfg.detuning_peak * w / cfg.envelope.peak;
    dydt[0] = d * y[1];
    dydt[1] = -d * y[0] - w * y[2];
    dydt[2] = w * y[1];
  };
  const auto states = solve_at_times(rhs, {g0[0], g0[1], g0[2]}, times, tol);
  Trajectory out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    out[i] = {times[i], {states[i][0], states[i][1], states[i][2]}};
  return out;
}

Trajectory integrate_reference(const DriveConfig& cfg, const Vec3& g0, double tol,
                               int n_samples) {
  const auto ts = sample_grid(cfg, n_samples);
  return integrate_reference(cfg, g0, tol, ts);
}

namespace {

// Cumulative quadrature state for all Magnus integrals on one uniform grid
// over [t0, t_end]. Every array is indexed by node.
struct MagnusGrid {
  double h = 0.0;
  std::vector<double> t;        // absolute node times
  std::vector<double> a;        // cum int Omega
  std::vector<double> ad;       // cum int Delta
  std::vector<double> lam0, lam1, lam2;
};

MagnusGrid build_magnus_grid(const DriveConfig& cfg, double t_end, int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("magnus grid_points must be odd and >= 3");
  MagnusGrid gr;
  gr.h = (t_end - cfg.t0) / (n - 1);
  gr.t.resize(n);
  std::vector<double> w(n), dlt(n);
  for (int i = 0; i < n; ++i) {
    gr.t[i] = cfg.t0 + gr.h * i;
    w[i] = omega_at(cfg, gr.t[i]);
    dlt[i] = delta_at(cfg, gr.t[i]);
  }
  gr.a = cumulative_simpson(w, gr.h);
  gr.ad = cumulative_simpson(dlt, gr.h);

  gr.lam0.assign(n, 0.0);
  gr.lam1.assign(n, 0.0);
  gr.lam2.assign(n, 0.0);
  if (cfg.detuning_mode == DetuningMode::proportional || cfg.detuning_peak == 0.0) {
    // Shared time dependence: g(t1) and g(t2) commute, corrections vanish.
    return gr;
  }

  const double delta = cfg.detuning_peak;
  // Relative times keep the reduction anchored at the window start.
  std::vector<double> tau(n), tmp(n);
  for (int i = 0; i < n; ++i) tau[i] = gr.t[i] - cfg.t0;

  for (int i = 0; i < n; ++i) tmp[i] = w[i] * tau[i];
  const auto b = cumulative_simpson(tmp, gr.h);  // cum int Omega tau
  const auto c = cumulative_simpson(gr.a, gr.h);  // cum int A

  for (int i = 0; i < n; ++i) tmp[i] = w[i] * tau[i] * tau[i];
  const auto d = cumulative_simpson(tmp, gr.h);  // cum int Omega tau^2
  const auto eb = cumulative_simpson(b, gr.h);
  const auto ec = cumulative_simpson(c, gr.h);

  for (int i = 0; i < n; ++i) tmp[i] = w[i] * b[i];
  const auto f1 = cumulative_simpson(tmp, gr.h);
  for (int i = 0; i < n; ++i) tmp[i] = w[i] * c[i];
  const auto f2 = cumulative_simpson(tmp, gr.h);
  for (int i = 0; i < n; ++i) tmp[i] = 0.5 * gr.a[i] * gr.a[i];
  const auto f3 = cumulative_simpson(tmp, gr.h);

  for (int i = 0; i < n; ++i) {
    gr.lam0[i] = 0.5 * delta * (b[i] - c[i]);
    gr.lam1[i] = -(delta / 6.0) * (f1[i] - 2.0 * f2[i] + f3[i]);
    gr.lam2[i] = -(delta * delta / 6.0) * (0.5 * d[i] - 2.0 * eb[i] + ec[i]);
  }
  return gr;
}

MagnusTerms terms_at_node(const MagnusGrid& gr, int i) {
  MagnusTerms t;
  t.omega_prime = gr.a[i];
  t.delta_prime = gr.ad[i];
  t.lambda0 = gr.lam0[i];
  t.lambda1 = gr.lam1[i];
  t.lambda2 = gr.lam2[i];
  return t;
}

}  // namespace

MagnusTerms magnus_terms(const DriveConfig& cfg, double t, int grid_points) {
  cfg.validate();
  if (t < cfg.t0 || t > cfg.tf)
    throw std::invalid_argument("magnus_terms: t outside the drive window");
  const int n = grid_points == 0 ? default_magnus_grid() : grid_points;
  if (t == cfg.t0) return {};
  const MagnusGrid gr = build_magnus_grid(cfg, t, n);
  return terms_at_node(gr, n - 1);
}

Propagator3 sylvester_exp(const Mat3& p) {
  double skew = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= i; ++j) skew = std::max(skew, std::abs(p(i, j) + p(j, i)));
  if (skew > 1e-12)
    throw std::invalid_argument("sylvester_exp: matrix is not antisymmetric");

  // Independent entries (upper triangle); symmetrizing removes round-off.
  const double a = 0.5 * (p(0, 1) - p(1, 0));
  const double b = 0.5 * (p(0, 2) - p(2, 0));
  const double c = 0.5 * (p(1, 2) - p(2, 1));
  Mat3 q;
  q(0, 1) = a; q(1, 0) = -a;
  q(0, 2) = b; q(2, 0) = -b;
  q(1, 2) = c; q(2, 1) = -c;

  const double xi = std::sqrt(a * a + b * b + c * c);
  // Spectral interpolation on {0, +i xi, -i xi}; the complex terms combine
  // into real sin/cos coefficients of Q and Q^2.
  double s1, s2;
  if (xi < 1e-8) {
    s1 = 1.0;
    s2 = 0.5;
  } else {
    s1 = std::sin(xi) / xi;
    s2 = (1.0 - std::cos(xi)) / (xi * xi);
  }
  return Mat3::identity() + s1 * q + s2 * (q * q);
}

Mat3 magnus_matrix(const MagnusTerms& terms, int order) {
  if (order != 1 && order != 3)
    throw std::invalid_argument("magnus order must be 1 or 3");
  const double eta = order == 1 ? terms.delta_prime : terms.eta();
  const double zeta = order == 1 ? terms.omega_prime : terms.zeta();
  const double lam = order == 1 ? 0.0 : terms.lambda0;
  Mat3 p;
  p(0, 1) = eta;  p(1, 0) = -eta;
  p(0, 2) = lam;  p(2, 0) = -lam;
  p(1, 2) = -zeta; p(2, 1) = zeta;
  return p;
}

Propagator3 magnus_propagator(const DriveConfig& cfg, double t, int order,
                              int grid_points) {
  return sylvester_exp(magnus_matrix(magnus_terms(cfg, t, grid_points), order));
}

Trajectory magnus_trajectory(const DriveConfig& cfg, const Vec3& g0, int order,
                             int n_samples, int grid_points) {
  cfg.validate();
  if (order != 1 && order != 3)
    throw std::invalid_argument("magnus order must be 1 or 3");
  const auto ts = sample_grid(cfg, n_samples);
  // Refine the sample grid until it meets the quadrature budget and has an
  // odd node count, so every sample lands on a quadrature node.
  const int target = grid_points == 0 ? default_magnus_grid() : grid_points;
  int k = (target - 1 + n_samples - 2) / (n_samples - 1);
  if (k < 1) k = 1;
  if (k * (n_samples - 1) % 2 != 0) ++k;
  const int n = k * (n_samples - 1) + 1;

  const MagnusGrid gr = build_magnus_grid(cfg, cfg.tf, n);
  Trajectory out(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const Mat3 r = sylvester_exp(magnus_matrix(terms_at_node(gr, static_cast<int>(j) * k), order));
    out[j] = {ts[j], r * g0};
  }
  return out;
}

namespace {

bool commuting_drive(const DriveConfig& cfg) {
  return cfg.detuning_mode == DetuningMode::proportional || cfg.detuning_peak == 0.0;
}

double epsilon_area(const DriveConfig& cfg, double t) {
  // Accumulated sqrt(Omega^2 + Delta^2). With a shared shape this is
  // (eps0/Omega0) * pulse area; at exact resonance it is the pulse area.
  if (cfg.detuning_mode == DetuningMode::proportional) {
    const double eps0 = std::hypot(cfg.envelope.peak, cfg.detuning_peak);
    return eps0 / cfg.envelope.peak * pulse_area(cfg, t);
  }
  return pulse_area(cfg, t);
}

Mat3 axis1_rotation(double angle) {
  Mat3 r = Mat3::identity();
  r(1, 1) = std::cos(angle);
  r(1, 2) = -std::sin(angle);
  r(2, 1) = std::sin(angle);
  r(2, 2) = std::cos(angle);
  return r;
}

}  // namespace

Propagator3 f_frame_propagator(const DriveConfig& cfg, double t) {
  cfg.validate();
  if (!commuting_drive(cfg))
    throw mode_mismatch_error(
        "aligned-frame propagator needs proportional detuning or resonance");
  return axis1_rotation(epsilon_area(cfg, t));
}

Trajectory f_frame_trajectory(const DriveConfig& cfg, const Vec3& g0, int n_samples) {
  cfg.validate();
  if (!commuting_drive(cfg))
    throw mode_mismatch_error(
        "aligned-frame trajectory needs proportional detuning or resonance");
  const auto ts = sample_grid(cfg, n_samples);
  Trajectory out(ts.size());
  if (cfg.envelope.peak == 0.0 && cfg.detuning_peak == 0.0) {
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = {ts[i], g0};
    return out;
  }
  const FrameCoefficients fc = f_frame_coeffs(cfg);
  const Vec3 f0 = to_f_frame(g0, fc);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Vec3 f = axis1_rotation(epsilon_area(cfg, ts[i])) * f0;
    out[i] = {ts[i], from_f_frame(f, fc)};
  }
  return out;
}

}  // namespace bloch
