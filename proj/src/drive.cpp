#include "bloch/drive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bloch/errors.hpp"

namespace bloch {

PulseEnvelope PulseEnvelope::constant(double peak) {
  PulseEnvelope e;
  e.shape = PulseShape::constant;
  e.peak = peak;
  return e;
}

PulseEnvelope PulseEnvelope::gaussian(double peak, double center, double width) {
  PulseEnvelope e;
  e.shape = PulseShape::gaussian;
  e.peak = peak;
  e.center = center;
  e.width = width;
  return e;
}

PulseEnvelope PulseEnvelope::sin_squared(double peak, double center, double width) {
  PulseEnvelope e;
  e.shape = PulseShape::sin_squared;
  e.peak = peak;
  e.center = center;
  e.width = width;
  return e;
}

PulseEnvelope PulseEnvelope::sampled(std::vector<std::pair<double, double>> samples) {
  PulseEnvelope e;
  e.shape = PulseShape::sampled;
  e.samples = std::move(samples);
  if (!e.samples.empty()) {
    double p = 0.0;
    for (const auto& s : e.samples) p = std::max(p, s.second);
    e.peak = p;
  }
  return e;
}

void DriveConfig::validate() const {
  if (!(tf > t0)) throw config_error("drive window is empty (tf must exceed t0)");
  if (!std::isfinite(envelope.peak) || envelope.peak < 0.0)
    throw config_error("envelope peak must be finite and non-negative");
  if (!std::isfinite(detuning_peak))
    throw config_error("detuning value must be finite");
  switch (envelope.shape) {
    case PulseShape::constant:
      break;
    case PulseShape::gaussian:
    case PulseShape::sin_squared:
      if (!(envelope.width > 0.0))
        throw config_error("envelope width must be positive");
      break;
    case PulseShape::sampled: {
      const auto& s = envelope.samples;
      if (s.size() < 2) throw config_error("sampled envelope needs at least 2 points");
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].second < 0.0)
          throw config_error("sampled envelope values must be non-negative");
        if (i > 0 && !(s[i].first > s[i - 1].first))
          throw config_error("sampled envelope grid must be strictly increasing");
      }
      if (s.front().first > t0 || s.back().first < tf)
        throw config_error("sampled envelope grid must cover the window");
      break;
    }
  }
  if (detuning_mode == DetuningMode::proportional && !(envelope.peak > 0.0))
    throw config_error("proportional detuning requires a positive envelope peak");
}

namespace {

double sampled_value(const std::vector<std::pair<double, double>>& s, double t) {
  auto it = std::lower_bound(s.begin(), s.end(), t,
                             [](const auto& p, double x) { return p.first < x; });
  if (it == s.begin()) return it->second;
  if (it == s.end()) return s.back().second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.first) / (hi.first - lo.first);
  return lo.second + w * (hi.second - lo.second);
}

double envelope_value(const DriveConfig& cfg, double t, bool clamp_sampled) {
  const PulseEnvelope& e = cfg.envelope;
  switch (e.shape) {
    case PulseShape::constant:
      return e.peak;
    case PulseShape::gaussian: {
      const double u = (t - e.center) / e.width;
      return e.peak * std::exp(-0.5 * u * u);
    }
    case PulseShape::sin_squared: {
      const double a = e.center - 0.5 * e.width;
      const double b = e.center + 0.5 * e.width;
      if (t <= a || t >= b) return 0.0;
      const double s = std::sin(M_PI * (t - a) / e.width);
      return e.peak * s * s;
    }
    case PulseShape::sampled: {
      if (!clamp_sampled &&
          (t < e.samples.front().first || t > e.samples.back().first))
        throw out_of_domain_error("sampled envelope evaluated outside its grid");
      return sampled_value(e.samples, t);
    }
  }
  return 0.0;
}

// Integral of a piecewise-linear envelope between x1 and x2 (grid-covered).
double sampled_area(const std::vector<std::pair<double, double>>& s, double x1,
                    double x2) {
  if (x2 <= x1) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double a = s[i].first, b = s[i + 1].first;
    const double lo = std::max(a, x1), hi = std::min(b, x2);
    if (hi <= lo) continue;
    const double slope = (s[i + 1].second - s[i].second) / (b - a);
    const double wlo = s[i].second + slope * (lo - a);
    const double whi = s[i].second + slope * (hi - a);
    acc += 0.5 * (wlo + whi) * (hi - lo);
  }
  return acc;
}

}  // namespace

double omega_at(const DriveConfig& cfg, double t) {
  return envelope_value(cfg, t, /*clamp_sampled=*/false);
}

double detail::omega_eval_clamped(const DriveConfig& cfg, double t) {
  return envelope_value(cfg, t, /*clamp_sampled=*/true);
}

double delta_at(const DriveConfig& cfg, double t) {
  if (cfg.detuning_mode == DetuningMode::constant) return cfg.detuning_peak;
  return cfg.detuning_peak * omega_at(cfg, t) / cfg.envelope.peak;
}

double pulse_area(const DriveConfig& cfg, double t) {
  if (t < cfg.t0)
    throw std::invalid_argument("pulse_area requires t >= window start");
  const PulseEnvelope& e = cfg.envelope;
  switch (e.shape) {
    case PulseShape::constant:
      return e.peak * (t - cfg.t0);
    case PulseShape::gaussian: {
      const double c = 1.0 / (e.width * std::sqrt(2.0));
      return e.peak * e.width * std::sqrt(M_PI / 2.0) *
             (std::erf((t - e.center) * c) - std::erf((cfg.t0 - e.center) * c));
    }
    case PulseShape::sin_squared: {
      const double a = e.center - 0.5 * e.width;
      const double b = e.center + 0.5 * e.width;
      auto anti = [&](double x) {
        // Antiderivative of sin^2(pi (x-a)/width) from a, valid on [a, b].
        const double u = std::clamp(x, a, b) - a;
        return 0.5 * u - e.width / (4.0 * M_PI) * std::sin(2.0 * M_PI * u / e.width);
      };
      return e.peak * (anti(t) - anti(cfg.t0));
    }
    case PulseShape::sampled: {
      const double lo = std::clamp(cfg.t0, e.samples.front().first, e.samples.back().first);
      const double hi = std::clamp(t, e.samples.front().first, e.samples.back().first);
      if (t > e.samples.back().first)
        throw out_of_domain_error("pulse_area beyond the sampled envelope grid");
      return sampled_area(e.samples, lo, hi);
    }
  }
  return 0.0;
}

DriveConfig with_pulse_area(const DriveConfig& cfg, double target) {
  if (!(target >= 0.0) || !std::isfinite(target))
    throw std::invalid_argument("target pulse area must be finite and >= 0");
  const double current = pulse_area(cfg, cfg.tf);
  if (!(current > 0.0))
    throw config_error("cannot rescale a zero-area envelope to a nonzero area");
  const double scale = target / current;
  DriveConfig out = cfg;
  out.envelope.peak *= scale;
  for (auto& s : out.envelope.samples) s.second *= scale;
  return out;
}

DriveConfig without_pulse(const DriveConfig& cfg) {
  DriveConfig out = cfg;
  out.envelope = PulseEnvelope::constant(0.0);
  if (out.detuning_mode == DetuningMode::proportional) {
    // Proportional detuning follows the envelope, so pulse off means no
    // detuning either; keep constant mode with value zero.
    out.detuning_mode = DetuningMode::constant;
    out.detuning_peak = 0.0;
  }
  return out;
}

Mat3 g_matrix(double omega, double delta) {
  Mat3 g;
  g(0, 1) = delta;
  g(1, 0) = -delta;
  g(1, 2) = -omega;
  g(2, 1) = omega;
  return g;
}

FrameCoefficients f_frame_coeffs(double omega, double delta) {
  const double eps = std::hypot(omega, delta);
  if (eps == 0.0)
    throw degenerate_frame_error("frame undefined: Omega and Delta both zero");
  return {eps, omega / eps, delta / eps};
}

FrameCoefficients f_frame_coeffs(const DriveConfig& cfg) {
  if (cfg.envelope.peak == 0.0 && cfg.detuning_peak == 0.0)
    throw degenerate_frame_error("frame undefined: zero drive and zero detuning");
  return f_frame_coeffs(cfg.envelope.peak, cfg.detuning_peak);
}

Vec3 to_f_frame(const Vec3& g, const FrameCoefficients& c) {
  return {c.omega_ratio * g[0] - c.delta_ratio * g[2], g[1],
          c.delta_ratio * g[0] + c.omega_ratio * g[2]};
}

Vec3 from_f_frame(const Vec3& f, const FrameCoefficients& c) {
  return {c.omega_ratio * f[0] + c.delta_ratio * f[2], f[1],
          -c.delta_ratio * f[0] + c.omega_ratio * f[2]};
}

}  // namespace bloch
