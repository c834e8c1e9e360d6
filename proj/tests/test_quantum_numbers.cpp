#include "doctest.h"
#include "planar_dirac/quantum_numbers.hpp"

using namespace planar_dirac;

namespace {
HalfInt h(int twice) { return HalfInt::from_twice(twice); }
}

TEST_CASE("from_ls fills the quartet") {
  auto q = from_ls(0, +1);
  CHECK(q.mj == h(1));
  CHECK(q.k == h(1));

  q = from_ls(0, -1);
  CHECK(q.mj == h(-1));
  CHECK(q.k == h(1));

  q = from_ls(2, -1);
  CHECK(q.mj == h(3));
  CHECK(q.k == h(-3));
  CHECK(q.consistent());
}

TEST_CASE("from_kmj inverts and rejects bad sectors") {
  auto q = from_kmj(h(1), h(-1));
  CHECK(q.l == 0);
  CHECK(q.s == -1);

  q = from_kmj(h(-3), h(3));
  CHECK(q.l == 2);
  CHECK(q.s == -1);

  CHECK_THROWS_AS(from_kmj(h(3), h(1)), SectorError);
  CHECK_THROWS_AS(from_kmj(h(0), h(0)), SectorError);
  CHECK_THROWS_AS(from_kmj(h(2), h(2)), SectorError);
}

TEST_CASE("enumerate_sectors ordering and round trip") {
  const auto zero = enumerate_sectors(0);
  REQUIRE(zero.size() == 2);
  CHECK(zero[0] == from_ls(0, -1));
  CHECK(zero[1] == from_ls(0, +1));

  CHECK(enumerate_sectors(1).size() == 6);

  const auto many = enumerate_sectors(5);
  for (std::size_t i = 0; i < many.size(); ++i) {
    const auto& q = many[i];
    CHECK(q.consistent());
    CHECK(from_kmj(q.k, q.mj) == q);
    CHECK(from_ls(q.l, q.s) == q);
    CHECK(q.mj.twice() == 2 * q.l + q.s);
    CHECK(q.k.twice() == 2 * q.l * q.s + 1);
    if (i > 0) {
      const auto& p = many[i - 1];
      CHECK((p.k < q.k || (p.k == q.k && p.mj < q.mj)));
    }
    // spin-partner map stays inside the valid quartets
    const auto partner = from_kmj(h(2 - q.k.twice()), h(q.mj.twice() - 2 * q.s));
    CHECK(partner.s == -q.s);
  }
}

TEST_CASE("half-integer rendering and parsing") {
  CHECK(h(3).str() == "3/2");
  CHECK(h(-1).str() == "-1/2");
  CHECK(parse_half_int("-3/2") == h(-3));
  CHECK(parse_half_int("1/2") == h(1));
  CHECK(parse_half_int("2") == h(4));
  CHECK_THROWS(parse_half_int("1/3"));
  CHECK_THROWS(parse_half_int("x"));
}
