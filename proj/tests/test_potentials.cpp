#include "doctest.h"
#include "planar_dirac/potentials.hpp"

#include <cmath>

using namespace planar_dirac;

TEST_CASE("profile families evaluate") {
  CHECK(ProfileTerm::harmonic(1.0).value(2.0) == doctest::Approx(4.0));
  CHECK(ProfileTerm::constant(0.5).value(17.0) == 0.5);
  CHECK(ProfileTerm::coulomb(1.0).value(0.25) == doctest::Approx(-4.0));
  CHECK(ProfileTerm::linear(3.0).value(2.0) == doctest::Approx(6.0));
  const auto ws = ProfileTerm::woods_saxon(-2.0, 3.0, 0.5);
  CHECK(ws.value(3.0) == doctest::Approx(-1.0));
  CHECK_THROWS(ProfileTerm::woods_saxon(-2.0, 3.0, 0.0));
}

TEST_CASE("analytic derivatives match central differences") {
  const Profile p = Profile(ProfileTerm::harmonic(0.7)) + Profile(ProfileTerm::coulomb(0.3)) +
                    Profile(ProfileTerm::woods_saxon(-1.5, 2.0, 0.4)) + Profile(ProfileTerm::linear(-0.2));
  for (double rho : {0.3, 1.0, 2.5, 4.0}) {
    const double h = 1e-5;
    const double fd = (p.value(rho + h) - p.value(rho - h)) / (2 * h);
    CHECK(std::abs(fd - p.derivative(rho)) < 1e-7);
  }
}

TEST_CASE("evaluate rejects non-positive radius") {
  PotentialSet set;
  set.sigma = ProfileTerm::harmonic(1.0);
  CHECK(set.evaluate(PotentialComponent::sigma, 2.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(set.evaluate(PotentialComponent::sigma, 0.0), DomainError);
  CHECK_THROWS_AS(set.evaluate(PotentialComponent::delta, -1.0), DomainError);
}

TEST_CASE("vector/scalar decomposition round trips") {
  PotentialSet set;
  set.sigma = Profile(ProfileTerm::harmonic(0.8)) + Profile(ProfileTerm::constant(0.1));
  set.delta = ProfileTerm::coulomb(0.4);
  for (double rho : {0.2, 1.3, 5.0}) {
    const double vv = set.vector_part(rho), vs = set.scalar_part(rho);
    CHECK(std::abs(vv + vs - set.evaluate(PotentialComponent::sigma, rho)) <= 1e-15 * std::max(1.0, std::abs(vv)));
    CHECK(std::abs(vv - vs - set.evaluate(PotentialComponent::delta, rho)) <= 1e-15 * std::max(1.0, std::abs(vv)));
  }
}

TEST_CASE("symmetry predicates") {
  PotentialSet a;
  a.sigma = ProfileTerm::harmonic(1.0);
  a.delta = ProfileTerm::constant(0.0);
  CHECK(is_spin_symmetric(a));
  CHECK_FALSE(is_pseudospin_symmetric(a));

  PotentialSet b = a;
  b.delta = ProfileTerm::harmonic(1.0);
  CHECK_FALSE(is_spin_symmetric(b));

  PotentialSet c = a;
  c.tensor = ProfileTerm::linear(1.0);
  CHECK_FALSE(is_spin_symmetric(c));

  PotentialSet d;
  d.delta = ProfileTerm::harmonic(1.0);
  CHECK(is_pseudospin_symmetric(d));
  CHECK_FALSE(is_spin_symmetric(d));

  PotentialSet e;
  e.delta = ProfileTerm::coulomb(1.0);
  CHECK(is_pseudospin_symmetric(e));

  PotentialSet both;
  both.sigma = ProfileTerm::constant(0.3);
  both.delta = ProfileTerm::constant(-0.2);
  CHECK(is_spin_symmetric(both));
  CHECK(is_pseudospin_symmetric(both));
}

TEST_CASE("asymptotic classification") {
  CHECK(Profile(ProfileTerm::harmonic(1.0)).asymptote() == Asymptote::confining);
  CHECK(Profile(ProfileTerm::harmonic(-1.0)).asymptote() == Asymptote::anticonfining);
  CHECK(Profile(ProfileTerm::coulomb(1.0)).asymptote() == Asymptote::vanishing);
  CHECK(Profile(ProfileTerm::constant(2.0)).asymptote() == Asymptote::constant);
  CHECK(Profile().is_zero());
}
