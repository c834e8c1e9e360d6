#include "doctest.h"
#include "planar_dirac/dirac_matrices.hpp"

using namespace planar_dirac;

TEST_CASE("Clifford algebra and projectors hold exactly") {
  const auto& d = dirac();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Mat4 ac = d.alpha[i] * d.alpha[j] + d.alpha[j] * d.alpha[i];
      CHECK(ac == (i == j ? Mat4(2.0 * d.identity) : Mat4(Mat4::Zero())));
    }
    CHECK(Mat4(d.alpha[i] * d.beta + d.beta * d.alpha[i]) == Mat4::Zero());
  }
  CHECK(Mat4(d.beta * d.beta) == d.identity);
  CHECK(Mat4(d.gamma5 * d.gamma5) == d.identity);
  CHECK(Mat4(d.P_plus * d.P_plus) == d.P_plus);
  CHECK(Mat4(d.P_minus * d.P_minus) == d.P_minus);
  CHECK(Mat4(d.P_plus * d.P_minus) == Mat4::Zero());
  CHECK(Mat4(d.P_plus + d.P_minus) == d.identity);
  CHECK(Mat4(d.gamma5 * d.beta * d.gamma5) == Mat4(-d.beta));
}

TEST_CASE("Levi-Civita symbol") {
  CHECK(levi_civita(0, 1, 2) == 1);
  CHECK(levi_civita(1, 0, 2) == -1);
  CHECK(levi_civita(2, 0, 1) == 1);
  CHECK(levi_civita(0, 0, 2) == 0);
}
