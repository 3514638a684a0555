#pragma once

#include <span>
#include <vector>

namespace bloch {

// Composite Simpson integral of samples on a uniform grid with spacing h.
// The sample count must be odd and >= 3.
double simpson(std::span<const double> f, double h);

// Running integral at every node of a uniform grid. Even nodes accumulate
// full Simpson panels; odd nodes add the half-panel integral of the local
// quadratic, keeping the whole prefix O(h^4) accurate. Sample count must be
// odd and >= 3. Returns a vector of the same length with result[0] == 0.
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

}  // namespace bloch
