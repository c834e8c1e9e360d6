#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace planar_dirac {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

/// Dirac matrices in the standard (Dirac-Pauli) representation. Entries are
/// in {0, ±1, ±i}, so products and sums are exact in floating point.
struct DiracMatrices {
  std::array<Mat4, 3> alpha;
  Mat4 beta;
  std::array<Mat4, 3> Sigma;
  Mat4 gamma5;
  Mat4 P_plus;
  Mat4 P_minus;
  Mat4 identity;

  /// S = beta Sigma.
  Mat4 S(int axis) const { return beta * Sigma[static_cast<std::size_t>(axis)]; }
};

const DiracMatrices& dirac();

std::array<Mat2, 3> pauli();

/// Levi-Civita symbol on indices 0..2.
int levi_civita(int i, int j, int k);

}  // namespace planar_dirac
