#pragma once

#include "bloch/mat.hpp"

namespace bloch {

// su(2) generator set and its adjoint action.
//
// Conventions used throughout the library:
//   * hbar = 1, all frequencies angular.
//   * The generators are the Pauli matrices G1, G2, G3, normalized as
//     Tr(Ga Gb) = 2 delta_ab and closing as [Ga, Gb] = 2i f_abc Gc with
//     f_abc the Levi-Civita symbol.
//   * A Hamiltonian h = (1/2) sum_a T_a Ga + c*I has torque vector T; the
//     identity part never enters the equations of motion.

// The generator with the given index (1..3). Throws std::invalid_argument
// for any other index.
Mat2c generator(int index);

// Levi-Civita structure constant f_abc, indices in 1..3 (0 outside).
double structure_constant(int a, int b, int c);

// Coefficients c_g with [Ga, Gb] = 2i sum_g c_g Gg, computed from the 2x2
// products. Equals structure_constant(a, b, g) for every pair.
Vec3 commutator_check(int a, int b);

// Real antisymmetric 3x3 adjoint generator with entries (F_a)_{bc} = -f_abc.
Mat3 adjoint_generator(int index);

// Equation-of-motion matrix g of dG/dt = g G from a torque vector,
// g_{ba} = sum_c T_c f_{cab}. Always exactly antisymmetric.
Mat3 al_matrix_from_torque(const Vec3& torque);

// Torque components T_a = Tr(h Ga) of a Hermitian 2x2 matrix; the identity
// component of h is discarded. Throws std::invalid_argument when h is not
// Hermitian within 1e-12.
Vec3 torque_from_hamiltonian(const Mat2c& h);

}  // namespace bloch
