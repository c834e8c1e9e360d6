#include "doctest.h"
#include "planar_dirac/angular_basis.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace planar_dirac;

namespace {
const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

SpinorField random_field(const AngularGrid& grid, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  SpinorField f(grid, 2);
  for (int c = 0; c < 2; ++c)
    for (int j = 0; j < grid.size(); ++j) f.values(c, j) = cd(d(rng), d(rng));
  return f;
}
}  // namespace

TEST_CASE("eval_h samples") {
  auto v = eval_h(0, +1, 0.0);
  CHECK(std::abs(v(0) - inv_sqrt_2pi) < 1e-15);
  CHECK(v(1) == cd(0.0));

  v = eval_h(1, -1, std::numbers::pi);
  CHECK(v(0) == cd(0.0));
  CHECK(std::abs(v(1) + inv_sqrt_2pi) < 1e-15);

  v = eval_h(2, +1, std::numbers::pi / 2);
  CHECK(std::abs(v(0) + inv_sqrt_2pi) < 1e-15);
}

TEST_CASE("harmonics are orthonormal on a 64-angle grid") {
  const AngularGrid grid(64);
  double worst = 0.0;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int l1 = -8; l1 <= 8; ++l1)
        for (int l2 = -8; l2 <= 8; ++l2) {
          const cd ip = inner_product(sample_h(l1, s1, grid), sample_h(l2, s2, grid));
          const double expect = (l1 == l2 && s1 == s2) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(ip - expect));
        }
  CHECK(worst <= 1e-12);
  CHECK(inner_product(sample_h(0, 1, grid), sample_h(0, -1, grid)) == cd(0.0));
}

TEST_CASE("inner product rejects mismatched grids") {
  CHECK_THROWS_AS(inner_product(sample_h(0, 1, AngularGrid(32)), sample_h(0, 1, AngularGrid(64))),
                  GridMismatch);
  CHECK_THROWS(AngularGrid(4));
  CHECK_THROWS(AngularGrid(48));
}

TEST_CASE("sigma_rho maps h_{l,s} to h_{l+s,-s}") {
  const AngularGrid grid(64);
  auto diff = [](const SpinorField& a, const SpinorField& b) {
    return (a.values - b.values).cwiseAbs().maxCoeff();
  };
  CHECK(diff(apply_sigma_rho(sample_h(0, 1, grid)), sample_h(1, -1, grid)) <= 1e-14);
  CHECK(diff(apply_sigma_rho(sample_h(1, -1, grid)), sample_h(0, 1, grid)) <= 1e-14);

  const auto r = random_field(grid, 7);
  CHECK(diff(apply_sigma_rho(apply_sigma_rho(r)), r) <= 1e-14);

  for (int l = -3; l <= 3; ++l)
    for (int s : {-1, 1}) {
      const auto img = sigma_rho_image({l, s});
      CHECK(img.l == l + s);
      CHECK(img.s == -s);
      // the literal (l, -s) reading does not hold
      const cd literal = inner_product(sample_h(l, -s, grid), apply_sigma_rho(sample_h(l, s, grid)));
      CHECK(std::abs(literal) < 1e-12);
    }
}

TEST_CASE("projection onto harmonics") {
  const AngularGrid grid(64);
  auto c = project_onto_harmonics(sample_h(2, 1, grid), -6, 6);
  for (const auto& [h, v] : c) {
    const double expect = (h.l == 2 && h.s == 1) ? 1.0 : 0.0;
    CHECK(std::abs(v - expect) <= 1e-12);
  }

  SpinorField mix(grid, 2);
  mix.values = (sample_h(0, 1, grid).values + sample_h(1, -1, grid).values) / std::sqrt(2.0);
  c = project_onto_harmonics(mix, -4, 4);
  CHECK(std::abs(c[{0, 1}] - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(c[{1, -1}] - 1.0 / std::sqrt(2.0)) <= 1e-12);

  c = project_onto_harmonics(apply_sigma_rho(sample_h(-2, -1, grid)), -6, 6);
  for (const auto& [h, v] : c) {
    const double expect = (h.l == -3 && h.s == 1) ? 1.0 : 0.0;
    CHECK(std::abs(v - expect) <= 1e-12);
  }

  CHECK_THROWS_AS(project_onto_harmonics(mix, -31, 0), AliasingError);
}

TEST_CASE("FFT round trip and spectral L_z") {
  const AngularGrid grid(32);
  const auto r = random_field(grid, 11);
  const auto back = angular_samples(angular_modes(r.values));
  CHECK((back - r.values).cwiseAbs().maxCoeff() <= 1e-13);

  const auto h3 = sample_h(3, -1, grid);
  CHECK((spectral_lz(h3.values) - 3.0 * h3.values).cwiseAbs().maxCoeff() <= 1e-13);
}
