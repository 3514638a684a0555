#include "bloch/algebra.hpp"

#include <stdexcept>

namespace bloch {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

Mat2c generator(int index) {
  Mat2c g;
  switch (index) {
    case 1:
      g(0, 1) = 1.0;
      g(1, 0) = 1.0;
      break;
    case 2:
      g(0, 1) = -kI;
      g(1, 0) = kI;
      break;
    case 3:
      g(0, 0) = 1.0;
      g(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("generator index must be 1, 2 or 3");
  }
  return g;
}

double structure_constant(int a, int b, int c) {
  if (a < 1 || a > 3 || b < 1 || b > 3 || c < 1 || c > 3) return 0.0;
  // Levi-Civita on {1,2,3}.
  return 0.5 * (a - b) * (b - c) * (c - a);
}

Vec3 commutator_check(int a, int b) {
  const Mat2c ga = generator(a);
  const Mat2c gb = generator(b);
  const Mat2c comm = ga * gb - gb * ga;
  Vec3 coeff;
  for (int g = 1; g <= 3; ++g) {
    // [Ga,Gb] = 2i sum c_g Gg and Tr(Gg Gg) = 2, so c_g = Tr(comm Gg) / 4i.
    const std::complex<double> t = trace(comm * generator(g));
    coeff[g - 1] = (t / (4.0 * kI)).real();
  }
  return coeff;
}

Mat3 adjoint_generator(int index) {
  if (index < 1 || index > 3)
    throw std::invalid_argument("adjoint generator index must be 1, 2 or 3");
  Mat3 f;
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c)
      f(b, c) = -structure_constant(index, b + 1, c + 1);
  return f;
}

Mat3 al_matrix_from_torque(const Vec3& torque) {
  Mat3 g;
  for (int b = 0; b < 3; ++b)
    for (int a = 0; a < 3; ++a) {
      double s = 0.0;
      for (int c = 0; c < 3; ++c)
        s += torque[c] * structure_constant(c + 1, a + 1, b + 1);
      g(b, a) = s;
    }
  return g;
}

Vec3 torque_from_hamiltonian(const Mat2c& h) {
  const double asym = std::abs(h(0, 1) - std::conj(h(1, 0))) +
                      std::abs(h(0, 0).imag()) + std::abs(h(1, 1).imag());
  if (asym > 1e-12)
    throw std::invalid_argument("torque_from_hamiltonian: matrix is not Hermitian");
  Vec3 t;
  for (int a = 1; a <= 3; ++a) t[a - 1] = trace(h * generator(a)).real();
  return t;
}

}  // namespace bloch
