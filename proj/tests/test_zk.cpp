#include <algorithm>
#include <random>

#include "doctest.h"
#include "iyb/error.hpp"
#include "iyb/zk.hpp"
#include "oracles.hpp"

using namespace iyb;
using namespace iyb::zk;

namespace {

std::vector<Vec> random_rows(std::mt19937_64& rng, u64 m, std::size_t rank, std::size_t count) {
  std::uniform_int_distribution<u64> d(0, m - 1);
  std::vector<Vec> rows(count, Vec(rank));
  for (auto& r : rows)
    for (auto& x : r) x = d(rng);
  return rows;
}

oracle::ElementSet elements_of(const HowellBasis& b) { return oracle::enumerate_span(b.modulus(), b.rank(), b.rows()); }

struct Ambient {
  u64 m;
  std::size_t r;
};
constexpr Ambient kAmbients[] = {{4, 3}, {8, 2}, {9, 2}};

}  // namespace

TEST_CASE("howell form: fixed examples") {
  HowellBasis id = span_of(4, 2, {{1, 0}, {0, 1}});
  CHECK(id.rows() == std::vector<Vec>{{1, 0}, {0, 1}});

  // span{(2,2),(0,2)} = {0,(2,2),(0,2),(2,0)}; canonical rows are (2,0),(0,2).
  HowellBasis b = span_of(4, 2, {{2, 2}, {0, 2}});
  CHECK(b.rows() == std::vector<Vec>{{2, 0}, {0, 2}});
  CHECK(elements_of(b) == oracle::enumerate_span(4, 2, {{2, 2}, {0, 2}}));

  CHECK(span_of(4, 3, {{0, 0, 0}, {4, 8, 0}}).empty());

  // Annihilator closure: span{(2,1)} over Z/4 contains 2*(2,1) = (0,2).
  HowellBasis c = span_of(4, 2, {{2, 1}});
  CHECK(c.rows() == std::vector<Vec>{{2, 1}, {0, 2}});
  CHECK(c.contains({0, 2}));
}

TEST_CASE("membership: fixed examples") {
  HowellBasis b = span_of(4, 2, {{2, 0}, {0, 2}});
  auto coords = b.coordinates({2, 2});
  REQUIRE(coords);
  CHECK(*coords == Vec{1, 1});
  CHECK_FALSE(b.coordinates({1, 0}));
  CHECK_THROWS_AS(b.contains({1, 0, 0}), std::invalid_argument);
}

TEST_CASE("sum, intersection and index: fixed examples") {
  HowellBasis a = span_of(4, 2, {{2, 0}});
  HowellBasis b = span_of(4, 2, {{0, 2}});
  HowellBasis s = sum(a, b);
  CHECK(s == span_of(4, 2, {{2, 0}, {0, 2}}));
  CHECK(s.size().to_u64() == 4);
  CHECK(intersection(s, s) == s);
  CHECK(submodule_index(full_module(4, 2)).to_u64() == 1);
  CHECK(submodule_index(s).to_u64() == 4);
  CHECK(submodule_index(HowellBasis(2, 3)).to_u64() == 8);
}

TEST_CASE("oracle equivalence on random instances") {
  std::mt19937_64 rng(20240501);
  for (const auto& amb : kAmbients) {
    const auto all = oracle::all_vectors(amb.m, amb.r);
    for (int trial = 0; trial < 1000; ++trial) {
      auto g1 = random_rows(rng, amb.m, amb.r, 1 + rng() % 3);
      auto g2 = random_rows(rng, amb.m, amb.r, 1 + rng() % 3);
      HowellBasis b1 = span_of(amb.m, amb.r, g1);
      HowellBasis b2 = span_of(amb.m, amb.r, g2);
      auto e1 = oracle::enumerate_span(amb.m, amb.r, g1);
      auto e2 = oracle::enumerate_span(amb.m, amb.r, g2);

      REQUIRE(elements_of(b1) == e1);
      REQUIRE(b1.size().to_u64() == e1.size());

      // canonical under shuffles and under a different generating set
      auto shuffled = g1;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      REQUIRE(span_of(amb.m, amb.r, shuffled) == b1);
      std::vector<Vec> alt(e1.begin(), e1.end());
      REQUIRE(span_of(amb.m, amb.r, alt) == b1);

      for (const auto& v : all) {
        auto c = b1.coordinates(v);
        REQUIRE(c.has_value() == (e1.count(v) == 1));
        if (c) {
          Vec back(amb.r, 0);
          for (std::size_t i = 0; i < c->size(); ++i)
            for (std::size_t j = 0; j < amb.r; ++j) back[j] = (back[j] + (*c)[i] * b1.rows()[i][j]) % amb.m;
          REQUIRE(back == v);
        }
      }

      HowellBasis s = sum(b1, b2);
      HowellBasis x = intersection(b1, b2);
      auto union_gens = g1;
      union_gens.insert(union_gens.end(), g2.begin(), g2.end());
      REQUIRE(elements_of(s) == oracle::enumerate_span(amb.m, amb.r, union_gens));
      REQUIRE(elements_of(x) == oracle::set_intersection(e1, e2));
      REQUIRE(b1.size() * b2.size() == s.size() * x.size());

      u64 total = all.size();
      REQUIRE(submodule_index(b1).to_u64() == total / e1.size());
    }
  }
}

TEST_CASE("kernel agrees with enumeration") {
  std::mt19937_64 rng(7);
  for (const auto& amb : kAmbients) {
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t rows = 1 + rng() % 3;
      ZkMatrix mat(amb.m, amb.r, random_rows(rng, amb.m, amb.r, rows));
      HowellBasis k = kernel(mat);
      oracle::ElementSet expect;
      for (const auto& x : oracle::all_vectors(amb.m, rows)) {
        bool zero = true;
        for (std::size_t j = 0; j < amb.r && zero; ++j) {
          u64 acc = 0;
          for (std::size_t i = 0; i < rows; ++i) acc = (acc + x[i] * mat(i, j)) % amb.m;
          zero = acc == 0;
        }
        if (zero) expect.insert(x);
      }
      REQUIRE(elements_of(k) == expect);
      REQUIRE(elements_of(image(mat)) == oracle::enumerate_span(amb.m, amb.r, mat.row_list()));
    }
  }
}

TEST_CASE("quotient module coordinates") {
  std::mt19937_64 rng(99);
  for (const auto& amb : kAmbients) {
    for (int trial = 0; trial < 200; ++trial) {
      auto gtop = random_rows(rng, amb.m, amb.r, 1 + rng() % 3);
      HowellBasis top = span_of(amb.m, amb.r, gtop);
      auto gsub = random_rows(rng, amb.m, amb.r, rng() % 3);
      for (auto& g : gsub) {
        // push sub inside top
        std::vector<Vec> rows = top.rows();
        Vec acc(amb.r, 0);
        for (const auto& r : rows) {
          u64 c = rng() % amb.m;
          for (std::size_t j = 0; j < amb.r; ++j) acc[j] = (acc[j] + c * r[j]) % amb.m;
        }
        g = acc;
      }
      HowellBasis sub = span_of(amb.m, amb.r, gsub);
      QuotientModule q(top, sub);
      REQUIRE(q.size() * sub.size() == top.size());
      for (std::size_t i = 1; i < q.dimension(); ++i) REQUIRE(q.invariants()[i] % q.invariants()[i - 1] == 0);

      std::set<Vec> seen_coords;
      std::set<Vec> seen_reps;
      for (const auto& x : elements_of(top)) {
        Vec c = q.coordinates(x);
        Vec back = q.lift(c);
        Vec diff(amb.r);
        for (std::size_t j = 0; j < amb.r; ++j) diff[j] = (x[j] + amb.m - back[j]) % amb.m;
        REQUIRE(sub.contains(diff));
        seen_coords.insert(c);
        seen_reps.insert(sub.reduce(x));
      }
      REQUIRE(seen_coords.size() == seen_reps.size());
      REQUIRE(seen_coords.size() == q.size().to_u64());
    }
  }
}

TEST_CASE("pure complement: fixed examples") {
  HowellBasis s = span_of(4, 2, {{1, 0}});
  CHECK(pure_complement(s) == span_of(4, 2, {{0, 1}}));
  CHECK_THROWS_AS(pure_complement(span_of(4, 2, {{2, 0}})), NotASummand);
  CHECK(pure_complement(full_module(4, 2)).empty());
}

TEST_CASE("pure complement agrees with exhaustive subgroup search") {
  for (u64 m : {4u, 6u, 8u, 9u}) {
    auto subgroups = oracle::all_two_generated_subgroups(m, 2);
    const std::size_t total = m * m;
    for (const auto& sset : subgroups) {
      std::vector<Vec> sg(sset.begin(), sset.end());
      HowellBasis s = span_of(m, 2, sg);
      bool exists = false;
      for (const auto& cset : subgroups) {
        if (oracle::set_intersection(sset, cset).size() == 1 && sset.size() * cset.size() == total) {
          exists = true;
          break;
        }
      }
      if (exists) {
        HowellBasis c = pure_complement(s);
        CHECK(intersection(c, s).empty());
        CHECK((c.size() * s.size()).to_u64() == total);
      } else {
        CHECK_THROWS_AS(pure_complement(s), NotASummand);
      }
    }
  }
}

TEST_CASE("pure complement inside a quotient") {
  // ambient (Z/8)^3 / span{(0,0,4)}; S generated by (2,0,0) is not pure,
  // S generated by (1,2,0) is.
  HowellBasis top = full_module(8, 3);
  HowellBasis sub = span_of(8, 3, {{0, 0, 4}});
  CHECK_THROWS_AS(pure_complement(span_of(8, 3, {{2, 0, 0}}), top, sub), NotASummand);
  HowellBasis s = span_of(8, 3, {{1, 2, 0}});
  HowellBasis c = pure_complement(s, top, sub);
  CHECK(intersection(c, sum(s, sub)) == sub);
  CHECK(sum(c, s) == top);
}

TEST_CASE("hyperplanes avoiding a vector") {
  HowellBasis j = full_module(2, 2);
  HowellBasis rad(2, 2);
  HyperplaneStream hs(j, rad, {1, 0});
  REQUIRE(hs.size() == 2);
  std::set<std::vector<Vec>> got;
  for (u64 i = 0; i < hs.size(); ++i) got.insert(hs.at(i).rows());
  std::set<std::vector<Vec>> expect{span_of(2, 2, {{0, 1}}).rows(), span_of(2, 2, {{1, 1}}).rows()};
  CHECK(got == expect);

  HyperplaneStream none(j, rad, {0, 0});
  CHECK(none.size() == 0);

  // d = 1: the only hyperplane is rad itself
  HowellBasis j1 = span_of(4, 1, {{1}});
  HowellBasis r1 = span_of(4, 1, {{2}});
  HyperplaneStream one(j1, r1, {1});
  REQUIRE(one.size() == 1);
  CHECK(one.at(0) == r1);
  CHECK_THROWS_AS(HyperplaneStream(r1, HowellBasis(4, 1), Vec{1}), std::invalid_argument);

  // exhaustive count check in (Z/3)^3: 9 of the 13 hyperplanes avoid (1,1,0)
  HyperplaneStream h3(full_module(3, 3), HowellBasis(3, 3), {1, 1, 0});
  CHECK(h3.size() == 9);
  std::set<std::vector<Vec>> distinct;
  for (u64 i = 0; i < h3.size(); ++i) {
    HowellBasis h = h3.at(i);
    CHECK(h.size().to_u64() == 9);
    CHECK_FALSE(h.contains({1, 1, 0}));
    distinct.insert(h.rows());
  }
  CHECK(distinct.size() == 9);
}
