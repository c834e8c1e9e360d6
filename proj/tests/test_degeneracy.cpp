#include "doctest.h"
#include "planar_dirac/degeneracy.hpp"

using namespace planar_dirac;

namespace {
QuantumNumbers sector(int twice_k, int twice_mj) {
  return from_kmj(HalfInt::from_twice(twice_k), HalfInt::from_twice(twice_mj));
}
}  // namespace

TEST_CASE("partner maps") {
  CHECK(spin_partner(sector(3, 3)) == sector(-1, 1));
  CHECK(spin_partner(sector(3, 3)).s == -1);
  CHECK(spin_partner(sector(1, 1)) == sector(1, -1));
  CHECK(pseudospin_partner(sector(1, 1)).k == HalfInt::from_twice(-3));
  CHECK(pseudospin_partner(sector(-1, 1)).k == HalfInt::from_twice(-1));
  for (const auto& q : enumerate_sectors(4)) {
    CAPTURE(q.str());
    CHECK(spin_partner(spin_partner(q)) == q);
    CHECK(pseudospin_partner(pseudospin_partner(q)) == q);
    CHECK(upper_centrifugal_times4(q.k) == upper_centrifugal_times4(spin_partner(q).k));
    CHECK(lower_centrifugal_times4(q.k) == lower_centrifugal_times4(pseudospin_partner(q).k));
    CHECK(spin_partner(q).consistent());
    CHECK(pseudospin_partner(q).consistent());
  }
}

TEST_CASE("spin degeneracy with harmonic V_sigma") {
  PotentialSet p;
  p.sigma = ProfileTerm::harmonic(1.0);
  DegeneracyOptions opt;
  opt.window = {1.0, 6.0};
  opt.max_nodes = 2;
  const auto r = verify_degeneracy(p, {sector(3, 3)}, opt);
  CHECK(r.all_pass);
  CHECK(r.unpaired == 0);
  REQUIRE(r.pairs.size() == 3);
  for (const auto& pr : r.pairs) CHECK(pr.abs_delta <= 1e-8 * pr.eps_a);
  CHECK(r.pairs[0].eps_a == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(r.control_lifted);
  CHECK(r.control_min_delta >= 1e-3);

  const auto j = to_json(r);
  CHECK(j["pairs"].size() == 3);
  CHECK(j["sectors"][0]["k"] == "-1/2");
  const auto csv = pairs_csv(r);
  CHECK(csv.rfind("k_a,mj_a,k_b,mj_b,n,eps_a,eps_b,abs_delta,pass\n", 0) == 0);
  CHECK(csv.find("-1/2,1/2,3/2,3/2,0,") != std::string::npos);
}

TEST_CASE("degeneracy preconditions and caveats") {
  PotentialSet broken;
  broken.sigma = ProfileTerm::harmonic(1.0);
  broken.delta = ProfileTerm::harmonic(-0.2);
  DegeneracyOptions opt;
  opt.window = {1.0, 5.0};
  opt.max_nodes = 1;
  CHECK_THROWS_AS(verify_degeneracy(broken, {sector(3, 3)}, opt), SymmetryConditionError);
  opt.require_symmetry = false;
  opt.negative_control = false;
  const auto r = verify_degeneracy(broken, {sector(3, 3)}, opt);
  CHECK_FALSE(r.symmetric);
  CHECK_FALSE(r.all_pass);

  PotentialSet well;
  well.delta = ProfileTerm::woods_saxon(-2.0, 3.0, 0.5);
  DegeneracyOptions ps;
  ps.mode = SymmetryMode::pseudospin;
  ps.window = {0.0, 0.99};
  ps.negative_control = false;
  const auto c = verify_degeneracy(well, {sector(1, 1)}, ps);
  bool caveat = false;
  for (const auto& w : c.warnings) caveat = caveat || w.find("only at negative energy") != std::string::npos;
  CHECK(caveat);
}

TEST_CASE("format_real keeps 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(3.0) == "3");
  CHECK(format_real(-2.5e-12) == "-2.4999999999999998e-12");
}
