#include "doctest.h"
#include "analytic_oracles.hpp"
#include "planar_dirac/fd_oracle.hpp"
#include "planar_dirac/radial_solver.hpp"

#include <Eigen/Dense>

#include <cmath>

using namespace planar_dirac;

namespace {
QuantumNumbers sector(int twice_k, int twice_mj) {
  return from_kmj(HalfInt::from_twice(twice_k), HalfInt::from_twice(twice_mj));
}
}  // namespace

TEST_CASE("size limit and symmetry") {
  PotentialSet free;
  CHECK_THROWS_AS(assemble(sector(1, 1), free, 10.0, 2001), OracleSizeError);
  const auto m = assemble(sector(3, 3), free, 10.0, 40);
  CHECK(m.diagonal.size() == 80);
  CHECK(m.off_diagonal.size() == 79);
  const auto a = dense(m);
  Eigen::Map<const Eigen::MatrixXd> mat(a.data(), 80, 80);
  CHECK((mat - mat.transpose()).norm() == 0.0);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
  const auto levels = eigen_in_window(m, {-1e6, 1e6});
  REQUIRE(levels.size() == 80);
  for (int i = 0; i < 80; ++i) CHECK(std::abs(levels[i].energy - es.eigenvalues()(i)) <= 1e-9);
}

TEST_CASE("free case has no in-gap states") {
  PotentialSet free;
  for (int tk : {1, -1, 3, -3}) {
    const auto m = assemble(sector(tk, std::abs(tk)), free, 20.0, 400);
    CHECK(eigen_in_window(m, {-0.999, 0.999}).empty());
  }
  CHECK(eigen_in_window(assemble(sector(1, 1), free, 20.0, 400), {2.0, 1.0}).empty());
}

TEST_CASE("Dirac oscillator levels and refinement") {
  PotentialSet p;
  p.tensor = ProfileTerm::linear(1.0);
  for (int tk : {1, -1}) {
    const auto levels = refined_levels(sector(tk, 1), p, 16.0, {0.5, 3.7});
    REQUIRE(levels.size() >= 3);
    for (int n = 0; n < 3; ++n) {
      const double e = levels[n].energy;
      CHECK(std::abs(e * e - 1.0 - oracle::dirac_oscillator_e2m2(0.5 * tk, n)) <= 1e-6);
      CHECK(levels[n].nodes == n);
    }
  }
}

TEST_CASE("harmonic spin case: stability under N -> 2N and no doubling") {
  PotentialSet p;
  p.sigma = ProfileTerm::harmonic(1.0);
  const auto q = sector(3, 3);
  const auto a = eigen_in_window(assemble(q, p, 8.0, 1000), {0.0, 16.0});
  const auto b = eigen_in_window(assemble(q, p, 8.0, 2000), {0.0, 16.0});
  REQUIRE(a.size() >= 10);
  // raw second-order levels move by ~1e-5 here; the extrapolated ones are stable
  CHECK(std::abs(a[0].energy - b[0].energy) <= 1e-4);
  const auto r500 = refined_levels(q, p, 8.0, {0.0, 4.0}, 500);
  const auto r1000 = refined_levels(q, p, 8.0, {0.0, 4.0}, 1000);
  REQUIRE(!r500.empty());
  CHECK(std::abs(r500[0].energy - r1000[0].energy) <= 1e-6);
  for (int i = 0; i < 10; ++i) {
    CHECK(b[i].oscillation < 1e-2);
    CHECK(b[i].nodes == i);
  }
  const auto r = refined_levels(q, p, 8.0, {0.0, 8.0});
  for (const auto& l : r)
    CHECK(std::abs(l.energy - oracle::harmonic_energy(1.5, l.nodes, 1.0, 1.0, +1)) <= 1e-7 * l.energy);
}

TEST_CASE("spin-symmetric partners are degenerate in the oracle") {
  PotentialSet p;
  p.sigma = ProfileTerm::harmonic(1.0);
  const auto a = refined_levels(sector(3, 3), p, 8.0, {0.0, 7.0});
  const auto b = refined_levels(sector(-1, 1), p, 8.0, {0.0, 7.0});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].energy - b[i].energy) <= 1e-8);
}

TEST_CASE("oracle agrees with shooting") {
  PotentialSet p;
  p.delta = ProfileTerm::harmonic(1.0);
  const auto q = sector(1, 1);
  const auto fd = refined_levels(q, p, 8.0, {1.05, 7.0});
  const auto sh = find_bound_states(q, p, {1.05, 7.0}, default_grid(decay_radius(q, 7.0, p)));
  REQUIRE(fd.size() == sh.solutions.size());
  for (std::size_t i = 0; i < fd.size(); ++i)
    CHECK(std::abs(fd[i].energy - sh.solutions[i].energy) <= 1e-6 * sh.solutions[i].energy);
}
