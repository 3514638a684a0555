#pragma once

#include <span>

#include "bloch/drive.hpp"
#include "bloch/mat.hpp"
#include "bloch/propagators.hpp"

namespace bloch {

// Open-system extension: the coherence-vector equation of motion picks up
// population and phase relaxation rates on top of the conservative rotation.

struct RelaxationRates {
  double gamma01_pop = 0.0;    // population rate on the G1 row
  double gamma10_pop = 0.0;    // population rate on the G2 row
  double gamma01_shift = 0.0;  // detuning-like shift on the coherence rows
  double gamma01_deph = 0.0;   // dephasing rate (gamma01 == gamma10)

  bool zero() const {
    return gamma01_pop == 0.0 && gamma10_pop == 0.0 && gamma01_shift == 0.0 &&
           gamma01_deph == 0.0;
  }
  // Throws std::invalid_argument when any rate is negative or non-finite.
  void validate() const;
};

// Full equation-of-motion matrix
//   [[-G01,        Delta - G'01, 0     ],
//    [-Delta + G'01, -G10,       -Omega],
//    [0,            Omega,       -2 gamma01]].
Mat3 relaxation_matrix(double omega, double delta, const RelaxationRates& rates);

// dG/dt for the open system (the matrix above applied to G).
Vec3 dissipative_rhs(const Vec3& g, double omega, double delta,
                     const RelaxationRates& rates);

// Adaptive integration of the open-system dynamics at the given sample
// times. With all rates zero this coincides with integrate_reference.
Trajectory integrate_dissipative(const DriveConfig& cfg, const RelaxationRates& rates,
                                 const Vec3& g0, double tol,
                                 std::span<const double> times);
Trajectory integrate_dissipative(const DriveConfig& cfg, const RelaxationRates& rates,
                                 const Vec3& g0, double tol = 1e-10,
                                 int n_samples = 201);

}  // namespace bloch
