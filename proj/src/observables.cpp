#include "bloch/observables.hpp"

#include <cmath>

#include "bloch/errors.hpp"

namespace bloch {

CoherenceVector density_to_bloch(const DensityMatrix2& rho) {
  if (std::abs(rho.rho00 + rho.rho11 - 1.0) > 1e-10)
    throw invalid_state_error("density matrix trace differs from 1");
  if (rho.rho00 * rho.rho11 - std::norm(rho.rho01) < -1e-12)
    throw invalid_state_error("density matrix is not positive semidefinite");
  return {2.0 * rho.rho01.real(), -2.0 * rho.rho01.imag(), rho.rho00 - rho.rho11};
}

DensityMatrix2 bloch_to_density(const CoherenceVector& g) {
  if (norm(g) > 1.0 + 1e-10)
    throw unphysical_state_error("coherence vector outside the unit ball");
  DensityMatrix2 rho;
  rho.rho00 = 0.5 * (1.0 + g[2]);
  rho.rho11 = 0.5 * (1.0 - g[2]);
  rho.rho01 = {0.5 * g[0], -0.5 * g[1]};
  return rho;
}

double purity(const DensityMatrix2& rho) {
  return rho.rho00 * rho.rho00 + rho.rho11 * rho.rho11 + 2.0 * std::norm(rho.rho01);
}

ConservationReport conservation_monitor(const Trajectory& f_frame_traj) {
  ConservationReport report;
  report.samples.reserve(f_frame_traj.size());
  for (const auto& p : f_frame_traj) {
    ConservationSample s;
    s.t = p.t;
    s.c1 = p.g[0] * p.g[0];
    s.c23 = p.g[1] * p.g[1] + p.g[2] * p.g[2];
    s.total = s.c1 + s.c23;
    report.samples.push_back(s);
  }
  if (report.samples.empty()) return report;
  const ConservationSample& first = report.samples.front();
  for (const auto& s : report.samples) {
    report.c1_drift = std::max(report.c1_drift, std::abs(s.c1 - first.c1));
    report.c23_drift = std::max(report.c23_drift, std::abs(s.c23 - first.c23));
    report.total_drift = std::max(report.total_drift, std::abs(s.total - first.total));
  }
  return report;
}

}  // namespace bloch
