#include <doctest.h>

#include <algorithm>
#include <set>
#include <utility>

#include "fqb/lattice.hpp"
#include "test_support.hpp"

using namespace fqb;
using fqb::testing::make_params;

namespace {

std::set<std::pair<int, int>> pair_set(const BondTable& t) {
  std::set<std::pair<int, int>> s;
  for (const Bond& b : t.bonds()) s.emplace(std::min(b.i, b.j), std::max(b.i, b.j));
  return s;
}

}  // namespace

TEST_CASE("nearest-neighbor ring of four") {
  const BondTable t = build_bond_table(make_params(4, Range::NearestNeighbor, Boundary::Periodic, 0, 0, 0));
  REQUIRE(t.size() == 4);
  const std::vector<std::pair<int, int>> expected{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(t.bonds()[k].i == expected[k].first);
    CHECK(t.bonds()[k].j == expected[k].second);
    CHECK(t.bonds()[k].weight == 1.0);
  }
}

TEST_CASE("long-range ring of four counts the antipodal pair twice") {
  const BondTable t = build_bond_table(make_params(4, Range::LongRange, Boundary::Periodic, 0, 0, 0));
  CHECK(t.size() == 8);
  CHECK(t.total_weight() == doctest::Approx(6.0));

  ChargerParams halved = make_params(4, Range::LongRange, Boundary::Periodic, 0, 0, 0);
  halved.antipodal_halving = true;
  // k=1: 4 x 1, k=2: 4 x 1/4
  CHECK(build_bond_table(halved).total_weight() == doctest::Approx(5.0));
}

TEST_CASE("long-range open chain of three") {
  const BondTable t = build_bond_table(make_params(3, Range::LongRange, Boundary::Open, 0, 0, 0));
  REQUIRE(t.size() == 3);
  std::vector<std::tuple<int, int, double>> got;
  for (const Bond& b : t.bonds()) got.emplace_back(b.i, b.j, b.weight);
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::tuple<int, int, double>>{{0, 1, 1.0}, {0, 2, 0.5}, {1, 2, 1.0}});
}

TEST_CASE("two-site ring holds the pair twice") {
  const BondTable t = build_bond_table(make_params(2, Range::NearestNeighbor, Boundary::Periodic, 0, 0, 0));
  CHECK(t.size() == 2);
  CHECK(t.total_weight() == 2.0);
}

TEST_CASE("bond counts follow the range cutoff") {
  for (int n = 2; n <= 12; ++n) {
    const int k_max = n % 2 ? (n - 1) / 2 : n / 2;
    CHECK(build_bond_table(make_params(n, Range::LongRange, Boundary::Periodic, 0, 0, 0)).size() ==
          static_cast<std::size_t>(n * k_max));
    CHECK(build_bond_table(make_params(n, Range::NearestNeighbor, Boundary::Periodic, 0, 0, 0)).size() ==
          static_cast<std::size_t>(n));
    CHECK(build_bond_table(make_params(n, Range::NearestNeighbor, Boundary::Open, 0, 0, 0)).size() ==
          static_cast<std::size_t>(n - 1));
  }
}

TEST_CASE("open long-range chain couples every pair once with weight 2^(1-k)") {
  for (int n = 2; n <= 10; ++n) {
    const BondTable t = build_bond_table(make_params(n, Range::LongRange, Boundary::Open, 0, 0, 0));
    CHECK(t.size() == static_cast<std::size_t>(n * (n - 1) / 2));
    CHECK(pair_set(t).size() == t.size());
    for (const Bond& b : t.bonds()) CHECK(b.weight == std::ldexp(1.0, 1 - std::abs(b.j - b.i)));

    // per-site weight sum equals the sum over realized separations
    for (int site = 0; site < n; ++site) {
      double touching = 0.0;
      for (const Bond& b : t.bonds()) {
        if (b.i == site || b.j == site) touching += b.weight;
      }
      double expected = 0.0;
      for (int other = 0; other < n; ++other) {
        if (other != site) expected += std::ldexp(1.0, 1 - std::abs(other - site));
      }
      CHECK(touching == doctest::Approx(expected));
    }
  }
}

TEST_CASE("nearest-neighbor tables are the k = 1 part of long-range tables") {
  for (Boundary bc : {Boundary::Periodic, Boundary::Open}) {
    for (int n = 3; n <= 10; ++n) {
      const BondTable lr = build_bond_table(make_params(n, Range::LongRange, bc, 0, 0, 0));
      const BondTable nn = build_bond_table(make_params(n, Range::NearestNeighbor, bc, 0, 0, 0));
      std::vector<std::tuple<int, int, double>> filtered;
      for (const Bond& b : lr.bonds()) {
        if (b.separation == 1) filtered.emplace_back(b.i, b.j, b.weight);
      }
      std::vector<std::tuple<int, int, double>> direct;
      for (const Bond& b : nn.bonds()) direct.emplace_back(b.i, b.j, b.weight);
      std::sort(filtered.begin(), filtered.end());
      std::sort(direct.begin(), direct.end());
      CHECK(filtered == direct);
    }
  }
}

TEST_CASE("interaction energy on product configurations") {
  const BondTable lr = build_bond_table(make_params(4, Range::LongRange, Boundary::Periodic, 0, 0, 0));
  const BondTable nn = build_bond_table(make_params(4, Range::NearestNeighbor, Boundary::Periodic, 0, 0, 0));
  CHECK(interaction_energy(0, lr) == 6.0);
  CHECK(interaction_energy(0, nn) == 4.0);
  CHECK(interaction_energy(0b0101, nn) == -4.0);
}

TEST_CASE("interaction energy is invariant under a global flip") {
  for (Range r : {Range::LongRange, Range::NearestNeighbor}) {
    for (Boundary bc : {Boundary::Periodic, Boundary::Open}) {
      for (int n = 2; n <= 10; ++n) {
        const BondTable t = build_bond_table(make_params(n, r, bc, 0, 0, 0));
        const BasisIndex mask = (BasisIndex{1} << n) - 1;
        bool symmetric = true;
        for (BasisIndex b = 0; b <= mask; ++b) symmetric &= interaction_energy(b, t) == interaction_energy(~b & mask, t);
        CHECK(symmetric);
      }
    }
  }
}

TEST_CASE("magnetization") {
  CHECK(magnetization(0, 4) == 4);
  CHECK(magnetization(0b1111, 4) == -4);
  CHECK(magnetization(0b0101, 4) == 0);
  for (int n = 1; n <= 10; ++n) {
    const BasisIndex mask = (BasisIndex{1} << n) - 1;
    for (BasisIndex b = 0; b <= mask; ++b) REQUIRE(magnetization(b, n) == -magnetization(~b & mask, n));
  }
}

TEST_CASE("invalid geometries are rejected") {
  CHECK_THROWS_AS(build_bond_table(make_params(0, Range::LongRange, Boundary::Periodic, 0, 0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_bond_table(make_params(1, Range::NearestNeighbor, Boundary::Open, 0, 0, 0)),
                  std::invalid_argument);
  CHECK(build_bond_table(make_params(1, Range::LongRange, Boundary::Periodic, 0, 0, 0)).size() == 0);

  ChargerParams bad = make_params(4, Range::LongRange, Boundary::Periodic, 0, 0.1, 0.1);
  bad.omega = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.omega = 1.0;
  bad.tau0 = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("boundary and range names") {
  CHECK(parse_boundary(to_string(Boundary::Open)) == Boundary::Open);
  CHECK(parse_range(to_string(Range::NearestNeighbor)) == Range::NearestNeighbor);
  CHECK_THROWS_AS(parse_boundary("ring"), std::invalid_argument);
}
