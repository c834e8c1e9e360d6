#include "planar_dirac/dirac_matrices.hpp"

namespace planar_dirac {

namespace {

Mat4 blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
  Mat4 m;
  m << a, b, c, d;
  return m;
}

DiracMatrices make_dirac() {
  const auto sigma = pauli();
  const Mat2 zero = Mat2::Zero();
  const Mat2 one = Mat2::Identity();
  DiracMatrices d;
  for (std::size_t i = 0; i < 3; ++i) {
    d.alpha[i] = blocks(zero, sigma[i], sigma[i], zero);
    d.Sigma[i] = blocks(sigma[i], zero, zero, sigma[i]);
  }
  d.beta = blocks(one, zero, zero, -one);
  d.gamma5 = blocks(zero, one, one, zero);
  d.identity = Mat4::Identity();
  d.P_plus = 0.5 * (d.identity + d.beta);
  d.P_minus = 0.5 * (d.identity - d.beta);
  return d;
}

}  // namespace

std::array<Mat2, 3> pauli() {
  using namespace std::complex_literals;
  Mat2 x, y, z;
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, -1i, 1i, 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  return {x, y, z};
}

const DiracMatrices& dirac() {
  static const DiracMatrices d = make_dirac();
  return d;
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace planar_dirac
