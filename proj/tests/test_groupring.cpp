#include <random>

#include "doctest.h"
#include "iyb/corpus.hpp"
#include "iyb/error.hpp"
#include "iyb/groupring.hpp"
#include "oracles.hpp"

using namespace iyb;

namespace {

Cardinality quotient_size(const HowellBasis& top, const HowellBasis& sub) { return zk::relative_index(top, sub); }

// omega^{i+1} from all products (1 - g) b with g in G, not just generators.
HowellBasis omega_next_full(const GroupRing& r, const HowellBasis& prev) {
  std::vector<Vec> rows;
  for (const auto& b : prev.rows())
    for (u64 g = 1; g < r.rank(); ++g) rows.push_back(r.mul(r.one_minus(g), b));
  return r.span(std::move(rows));
}

}  // namespace

TEST_CASE("omega powers of C2 over Z/4") {
  GroupRing r(Group::cyclic(2), 4);
  CHECK(r.omega(1).size().to_u64() == 4);
  CHECK(r.omega(2).size().to_u64() == 2);
  CHECK(r.omega(2) == r.span({{2, 2}}));
  CHECK(oracle::enumerate_span(4, 2, r.omega(2).rows()) == oracle::enumerate_span(4, 2, {{2, 2}}));
  CHECK(r.mul(r.one_minus(1), r.one_minus(1)) == Vec{2, 2});
}

TEST_CASE("omega layers are nested left ideals of augmentation zero") {
  for (const Group& g : {Group::cyclic(4), Group::dihedral(4), Group::quaternion(), Group::heisenberg(3)}) {
    u64 m = default_modulus(g);
    GroupRing r(g, m);
    for (unsigned i = 1; i <= 3; ++i) {
      CHECK(r.is_left_ideal(r.omega(i)));
      for (const auto& row : r.omega(i).rows()) CHECK(r.augmentation(row) == 0);
      if (i > 1) {
        CHECK(r.omega(i - 1).contains_all(r.omega(i)));
        CHECK(omega_next_full(r, r.omega(i - 1)) == r.omega(i));
      }
    }
  }
}

TEST_CASE("ring multiplication and augmentation") {
  Group g = Group::dihedral(3);
  GroupRing r(g, 9);
  std::mt19937_64 rng(5);
  auto rand_vec = [&] {
    Vec v(r.rank());
    for (auto& x : v) x = rng() % 9;
    return v;
  };
  for (int t = 0; t < 50; ++t) {
    Vec a = rand_vec(), b = rand_vec(), c = rand_vec();
    CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
    CHECK(r.augmentation(r.mul(a, b)) == mulmod(r.augmentation(a), r.augmentation(b), 9));
    u64 x = rng() % g.order();
    CHECK(r.left_mul(x, a) == r.mul(r.basis(x), a));
  }
  CHECK_THROWS_AS(GroupRing(Group::cyclic(2000), 2), ResourceLimit);
}

TEST_CASE("abelianization check") {
  GroupRing h3(Group::heisenberg(3), 27);
  CHECK(quotient_size(h3.omega(1), h3.omega(2)).to_u64() == 9);

  auto c4 = abelianization_iso_check(GroupRing(Group::cyclic(4), 8));
  CHECK(c4.ok);
  CHECK(c4.size == 4);
  auto d8 = abelianization_iso_check(GroupRing(Group::dihedral(4), 16));
  CHECK(d8.ok);
  CHECK(d8.size == 4);
  auto h5 = abelianization_iso_check(GroupRing(Group::heisenberg(5), 125));
  CHECK(h5.ok);
  CHECK(h5.size == 25);
  CHECK(h5.omega_quotient == 25);
}

TEST_CASE("dimension subgroup probes") {
  Group q8 = Group::quaternion();
  GroupRing rq(q8, 64);
  CHECK(dimension_subgroup_probe(rq, 2) == derived_subgroup(q8));
  CHECK(derived_subgroup(q8).size() == 2);

  Group h3 = Group::heisenberg(3);
  CHECK(dimension_subgroup_probe(GroupRing(h3, 729), 3) == ElementSet{0});
  CHECK(dimension_subgroup_probe(GroupRing(Group::abelian({2, 4}), 256), 2) == ElementSet{0});
}

TEST_CASE("dimension subgroup probes match the lower central series on the corpus") {
  for (u64 order : {8u, 16u}) {
    for (const auto& ng : small_group_corpus(order)) {
      CAPTURE(ng.name);
      GroupRing r(ng.group, default_modulus(ng.group, 2));
      auto inv = structural_invariants(ng.group);
      const auto& lcs = inv.lower_central_series;
      ElementSet g2 = lcs.size() > 1 ? lcs[1] : ElementSet{0};
      ElementSet g3 = lcs.size() > 2 ? lcs[2] : ElementSet{0};
      CHECK(dimension_subgroup_probe(r, 2) == g2);
      CHECK(dimension_subgroup_probe(r, 3) == g3);
      CHECK(abelianization_iso_check(r).ok);
    }
  }
}

TEST_CASE("left ideal closure and preimages") {
  GroupRing d8(Group::dihedral(4), 16);
  CHECK_FALSE(d8.is_left_ideal(d8.span({d8.one_minus(1)})));
  CHECK(d8.is_left_ideal(d8.left_closure(d8.span({d8.one_minus(1)}))));

  Group c4 = Group::cyclic(4);
  GroupRing r(c4, 4);
  QuotientGroup q = quotient_group(c4, {0, 2});
  GroupRing rq(q.group, 4);
  // I' = omega itself
  CHECK(left_ideal_preimage(r, q, rq.omega(1)) == r.omega(1));
  // I' of index 2 in omega(C2)
  HowellBasis ip = rq.span({{2, 2}});
  REQUIRE(zk::relative_index(rq.omega(1), ip).to_u64() == 2);
  HowellBasis j = left_ideal_preimage(r, q, ip);
  CHECK(r.is_left_ideal(j));
  CHECK(r.omega(1).contains_all(j));
  CHECK(zk::relative_index(r.omega(1), j).to_u64() == 2);
}

TEST_CASE("radical") {
  GroupRing c2(Group::cyclic(2), 4);
  HowellBasis rad = c2.radical(c2.omega(1));
  CHECK(rad == c2.span({{2, 2}}));
  CHECK(zk::relative_index(c2.omega(1), rad).to_u64() == 2);
  CHECK(c2.radical(c2.zero()).empty());

  GroupRing c3(Group::cyclic(3), 27);
  CHECK(zk::relative_index(c3.omega(1), c3.radical(c3.omega(1))).to_u64() == 3);
  CHECK_THROWS_AS(GroupRing(Group::cyclic(6), 8).radical(HowellBasis(8, 6)), Error);
}

TEST_CASE("sandling complement") {
  GroupRing ab(Group::abelian({2, 2}), 4);
  auto sa = sandling_complement(ab);
  CHECK(sa.s == ab.omega(3));
  CHECK(sa.c == ab.omega(2));

  Group h = Group::heisenberg(3);
  GroupRing r(h, 27);
  auto sp = sandling_complement(r);
  CHECK(zk::relative_index(sp.s, r.omega(3)).to_u64() == 3);
  CHECK(zk::intersection(sp.s, sp.c) == r.omega(3));
  CHECK(zk::sum(sp.s, sp.c) == r.omega(2));
  CHECK((zk::relative_index(sp.s, r.omega(3)) * zk::relative_index(sp.c, r.omega(3))) ==
        zk::relative_index(r.omega(2), r.omega(3)));
  // (1 - d3) + (1 - d3^2) = 1 - d3^3 mod omega^3
  u64 d3 = 9;
  CHECK(r.omega(3).contains(add_vectors(r.one_minus(d3), r.one_minus(h.mul(d3, d3)), std::vector<u64>(27, 27))));

  CHECK_THROWS_AS(sandling_complement(GroupRing(Group::cyclic(6), 6)), ConstructionError);
  CHECK_THROWS_AS(sandling_complement(GroupRing(Group::dihedral(8), 16)), ConstructionError);
}

TEST_CASE("projection onto a summand") {
  Group h = Group::heisenberg(3);
  GroupRing r(h, 27);
  auto sp = sandling_complement(r);
  zk::Projection pi(sp.s, sp.c, r.omega(3));
  std::mt19937_64 rng(11);
  const auto& rows = r.omega(2).rows();
  for (int t = 0; t < 100; ++t) {
    Vec x(27, 0);
    for (const auto& row : rows) {
      u64 c = rng() % 27;
      for (std::size_t i = 0; i < 27; ++i) x[i] = (x[i] + c * row[i]) % 27;
    }
    Vec px = pi.apply(x);
    CHECK(sp.s.contains(px));
    CHECK(pi.apply(px) == px);
    Vec diff(27);
    for (std::size_t i = 0; i < 27; ++i) diff[i] = (x[i] + 27 - px[i]) % 27;
    CHECK(sp.c.contains(diff));
  }
  for (const auto& row : sp.s.rows()) CHECK(pi.apply(row) == r.omega(3).reduce(row));
}

TEST_CASE("submodule enumeration") {
  // all subgroups of (Z/4)^2: 15
  auto all = zk::enumerate_submodules(zk::full_module(4, 2), HowellBasis(4, 2), nullptr, nullptr, 1000);
  CHECK(all.size() == 15);
  CHECK(all.size() == oracle::all_two_generated_subgroups(4, 2).size());
  // left ideals of (Z/2)C4 inside omega: a chain of length 4
  GroupRing r(Group::cyclic(4), 2);
  auto ideals = zk::enumerate_submodules(
      r.omega(1), HowellBasis(2, 4), nullptr, [&](HowellBasis b) { return r.left_closure(b); }, 1000);
  CHECK(ideals.size() == 4);
  CHECK_THROWS_AS(zk::enumerate_submodules(zk::full_module(4, 2), HowellBasis(4, 2), nullptr, nullptr, 3),
                  ResourceLimit);
}
