#include "bloch/quad.hpp"

#include <stdexcept>

namespace bloch {

static void require_odd(std::size_t n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("Simpson rule needs an odd sample count >= 3");
}

double simpson(std::span<const double> f, double h) {
  require_odd(f.size());
  double s = f.front() + f.back();
  for (std::size_t i = 1; i + 1 < f.size(); i += 2) s += 4.0 * f[i];
  for (std::size_t i = 2; i + 1 < f.size(); i += 2) s += 2.0 * f[i];
  return s * h / 3.0;
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  require_odd(f.size());
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 2; i < n; i += 2)
    out[i] = out[i - 2] + (h / 3.0) * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
  for (std::size_t i = 1; i < n; i += 2) {
    // Integral of the quadratic through nodes (i-1, i, i+1) over the first
    // half of its panel.
    out[i] = out[i - 1] + (h / 12.0) * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
  }
  return out;
}

}  // namespace bloch
