#include <fstream>
#include <random>

#include "doctest.h"
#include "iyb/corpus.hpp"
#include "iyb/error.hpp"
#include "iyb/group.hpp"
#include "iyb/hertweck.hpp"
#include "oracles.hpp"

using namespace iyb;

namespace {

// Associativity, identity and inverse laws: exhaustive up to order 256,
// 10^5 random triples above.
void check_group_laws(const Group& g) {
  const u64 n = g.order();
  for (u64 x = 0; x < std::min<u64>(n, 4096); ++x) {
    REQUIRE(g.mul(0, x) == x);
    REQUIRE(g.mul(x, 0) == x);
    REQUIRE(g.mul(x, g.inv(x)) == 0);
    REQUIRE(g.mul(g.inv(x), x) == 0);
  }
  if (n <= 256) {
    for (u64 x = 0; x < n; ++x)
      for (u64 y = 0; y < n; ++y) {
        u64 xy = g.mul(x, y);
        for (u64 z = 0; z < n; ++z) REQUIRE(g.mul(xy, z) == g.mul(x, g.mul(y, z)));
      }
  } else {
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<u64> d(0, n - 1);
    for (int i = 0; i < 100000; ++i) {
      u64 x = d(rng), y = d(rng), z = d(rng);
      REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
    }
  }
}

u64 heis(u64 q, u64 a, u64 b, u64 c) { return heis_index(q, a, b, c); }

}  // namespace

TEST_CASE("heisenberg multiplication and commutators") {
  Group h = Group::heisenberg(3);
  CHECK(h.mul(heis(3, 1, 0, 0), heis(3, 0, 1, 0)) == heis(3, 1, 1, 0));
  CHECK(h.mul(heis(3, 0, 1, 0), heis(3, 1, 0, 0)) == heis(3, 1, 1, 1));
  u64 d1 = heis(3, 1, 0, 0), d2 = heis(3, 0, 1, 0), d3 = heis(3, 0, 0, 1);
  CHECK(h.commutator(d2, d1) == d3);
  CHECK(h.conj(d2, d1) == h.mul(d2, d3));  // d2^d1 = d2 d3
  for (u64 x = 0; x < h.order(); ++x) CHECK(h.mul(0, x) == x);

  // coordinate oracle: the defining product rule, for every pair at q = 5
  Group h5 = Group::heisenberg(5);
  for (u64 x = 0; x < 125; ++x)
    for (u64 y = 0; y < 125; ++y) {
      auto [n1, n2, n3] = heis_coords(5, x);
      auto [m1, m2, m3] = heis_coords(5, y);
      REQUIRE(h5.mul(x, y) == heis(5, n1 + m1, n2 + m2, n3 + m3 + n2 * m1));
    }
  CHECK_THROWS_AS(h.mul(27, 0), std::out_of_range);
}

TEST_CASE("commutators in abelian and dihedral groups") {
  Group a = Group::abelian({2, 6});
  for (u64 x = 0; x < a.order(); ++x)
    for (u64 y = 0; y < a.order(); ++y) CHECK(a.commutator(x, y) == 0);
  Group d8 = Group::dihedral(4);
  u64 r = 1, s = 4;
  CHECK(d8.commutator(r, s) == d8.mul(r, r));
}

TEST_CASE("structural invariants") {
  Group h5 = Group::heisenberg(5);
  auto inv = structural_invariants(h5);
  CHECK(inv.nilpotency_class == 2u);
  // brute-force centralizer scan
  ElementSet z;
  for (u64 x = 0; x < 125; ++x) {
    bool c = true;
    for (u64 y = 0; y < 125 && c; ++y) c = h5.mul(x, y) == h5.mul(y, x);
    if (c) z.push_back(x);
  }
  CHECK(inv.center == z);
  CHECK(z.size() == 5);
  CHECK(inv.center == subgroup_generated(h5, {heis(5, 0, 0, 1)}));
  CHECK(inv.derived == inv.center);

  auto c6 = structural_invariants(Group::cyclic(6));
  CHECK(c6.nilpotency_class == 1u);
  CHECK(c6.derived == ElementSet{0});
  CHECK(c6.element_orders == std::map<u64, u64>{{1, 1}, {2, 1}, {3, 2}, {6, 2}});

  Group d8 = Group::dihedral(4);
  auto di = structural_invariants(d8);
  CHECK(di.derived == ElementSet{0, 2});
  CHECK(di.nilpotency_class == 2u);

  // derived subgroup by brute force over all commutators
  for (const auto& ng : small_group_corpus(16)) {
    std::vector<u64> comms;
    for (u64 x = 0; x < 16; ++x)
      for (u64 y = 0; y < 16; ++y) comms.push_back(ng.group.commutator(x, y));
    CHECK(derived_subgroup(ng.group) == subgroup_generated(ng.group, comms));
  }
  CHECK_FALSE(nilpotency_class(Group::symmetric(3)).has_value());
}

TEST_CASE("square roots of odd-order elements") {
  Group c9 = Group::cyclic(9);
  CHECK(sqrt_odd(c9, 1) == 5);
  Group h3 = Group::heisenberg(3);
  CHECK(sqrt_odd(h3, heis(3, 0, 0, 1)) == heis(3, 0, 0, 2));
  CHECK(sqrt_odd(h3, 0) == 0);
  for (u64 x = 0; x < 27; ++x) {
    u64 y = sqrt_odd(h3, x);
    CHECK(h3.mul(y, y) == x);
  }
  CHECK_THROWS_AS(sqrt_odd(Group::cyclic(4), 1), Error);
}

TEST_CASE("semidirect products") {
  Group s3 = Group::semidirect(s3_action());
  CHECK(s3.order() == 6);
  CHECK(center(s3) == ElementSet{0});
  CHECK(oracle::isomorphic(s3, Group::symmetric(3)));
  CHECK(oracle::isomorphic(Group::dihedral(3), Group::symmetric(3)));

  // trivial action gives the direct product
  Group c3 = Group::cyclic(3), c2 = Group::cyclic(2);
  Group t = Group::semidirect(GroupAction::trivial(c2, c3));
  CHECK(derived_subgroup(t) == ElementSet{0});
  CHECK(oracle::isomorphic(t, Group::cyclic(6)));

  // N is normal, H a complement
  auto parts = s3.semidirect_parts();
  REQUIRE(parts);
  ElementSet n_img, h_img;
  for (u64 x = 0; x < 3; ++x) n_img.push_back(parts->embed_n(x));
  for (u64 y = 0; y < 2; ++y) h_img.push_back(parts->embed_h(y));
  CHECK(is_normal(s3, n_img));
  CHECK(subgroup_generated(s3, n_img) == n_img);

  auto h = hertweck_groups(5);
  GroupAction alpha1 = h.action.pull_back(Group::cyclic(4), {1});
  Group g500 = Group::semidirect(alpha1);
  CHECK(g500.order() == 500);
  CHECK_FALSE(nilpotency_class(g500).has_value());
  CHECK(center(g500).size() == 1);
  check_group_laws(g500);

  // a non-automorphism is rejected
  Perm bad{0, 2, 1, 3};
  CHECK_THROWS_AS(GroupAction(Group::cyclic(2), Group::cyclic(4), {bad}), Error);
  // a valid automorphism that violates the acting group's relator: C_3 by inversion
  CHECK_THROWS_AS(GroupAction(Group::cyclic(3), Group::cyclic(3), {Perm{0, 2, 1}}), Error);
}

TEST_CASE("group laws for every structured constructor") {
  std::vector<Group> groups{Group::cyclic(12),
                            Group::abelian({2, 6}),
                            Group::dihedral(4),
                            Group::dihedral(1),
                            Group::dicyclic(3),
                            Group::quaternion(),
                            Group::symmetric(4),
                            Group::heisenberg(3),
                            Group::heisenberg(5),
                            Group::semidirect(sl23_action()),
                            Group::semidirect(a4_action()),
                            Group::direct_product(Group::quaternion(), Group::cyclic(3)),
                            Group::direct_power(Group::cyclic(3), 3),
                            Group::heisenberg(13),
                            Group::heisenberg(97),
                            hertweck_groups(5).a};
  for (const auto& ng : small_group_corpus(16)) groups.push_back(ng.group);
  for (const auto& g : groups) {
    CAPTURE(g.name());
    check_group_laws(g);
    // relators hold and factorization words reproduce elements
    if (auto rels = g.relators())
      for (const auto& w : *rels) CHECK(g.evaluate(w) == 0);
    if (g.order() <= 5000)
      for (u64 x = 0; x < g.order(); ++x) REQUIRE(g.evaluate(g.factor(x)) == x);
    CHECK(subgroup_generated(g, g.generators()).size() == std::min<u64>(g.order(), g.order()));
  }
}

TEST_CASE("hertweck automorphism group") {
  auto h = hertweck_groups(5);
  CHECK(h.zeta == 2);
  CHECK(h.a.order() == 32);
  const u64 a1 = h.a.generators()[0], a2 = h.a.generators()[1], t = h.a.generators()[2];
  CHECK(h.a.mul(t, t) == 0);
  CHECK(h.a.mul(a1, a2) == h.a.mul(a2, a1));
  CHECK(h.a.conj(a1, t) == a2);  // alpha1^tau = alpha2
  // tau on D: d1 -> d2
  CHECK(h.action.apply(t, heis(5, 1, 0, 0)) == heis(5, 0, 1, 0));

  // Delta is an injective homomorphism
  auto mul2 = [](const Mat2& x, const Mat2& y) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r[i][j] = (x[i][0] * y[0][j] + x[i][1] * y[1][j]) % 5;
    return r;
  };
  std::set<Mat2> images;
  for (u64 x = 0; x < 32; ++x) {
    images.insert(delta_rep(h, x));
    for (u64 y = 0; y < 32; ++y) REQUIRE(delta_rep(h, h.a.mul(x, y)) == mul2(delta_rep(h, x), delta_rep(h, y)));
  }
  CHECK(images.size() == 32);
  CHECK(delta_rep(h, t) == Mat2{{{0, 1}, {1, 0}}});
  CHECK(delta_rep(h, a1) == Mat2{{{2, 0}, {0, 1}}});
  CHECK(delta_rep(h, a2) == Mat2{{{1, 0}, {0, 2}}});

  // tau alpha1 has order 2(q-1) = 8, as an element and as a matrix
  u64 ta1 = h.a.mul(t, a1);
  CHECK(h.a.element_order(ta1) == 8);
  Mat2 m = delta_rep(h, ta1), p = m;
  int ord = 1;
  while (p != Mat2{{{1, 0}, {0, 1}}}) {
    p = mul2(p, m);
    ++ord;
  }
  CHECK(ord == 8);

  // |GL_2(5)| by enumeration, and the factorization q * 2(q-1)^2 * (q+1)/2
  int gl = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c)
        for (int d = 0; d < 5; ++d) gl += ((a * d - b * c) % 5 + 5) % 5 != 0;
  CHECK(gl == 480);
  CHECK(gl == 5 * 32 * 3);

  // module twist: Delta_M(tau) = -(1 + antidiag), Delta_M(alpha1) = diag(z,1,z)
  CHECK(delta_module(h, t) == Matrix{{4, 0, 0}, {0, 0, 4}, {0, 4, 0}});
  CHECK(delta_module(h, a1) == Matrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  CHECK(delta_module(h, a2) == Matrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}});

  // zeta independence: another primitive root gives a group of the same
  // order passing the same relation checks
  auto h3 = hertweck_groups(5, 3);
  CHECK(h3.a.order() == 32);
  CHECK(h3.a.element_order(h3.a.mul(h3.a.generators()[2], h3.a.generators()[0])) == 8);
  CHECK_THROWS_AS(hertweck_groups(5, 4), ConstructionError);
  CHECK_THROWS_AS(hertweck_groups(6), ConstructionError);
  CHECK_NOTHROW(hertweck_groups(7));
  CHECK_FALSE(hertweck_groups(7).q_is_1_mod_4);
}

TEST_CASE("wreath action on direct powers") {
  // n = 1: the action is unchanged
  GroupAction inv = s3_action();  // C2 inverting C3
  auto w1 = direct_power_with_wreath(inv, 1);
  CHECK(w1.power.order() == 3);
  CHECK(w1.wreath.order() == 2);
  for (u64 x = 0; x < 3; ++x) CHECK(w1.action.apply(1, x) == inv.apply(1, x));

  // A trivial: sigma swaps coordinates
  auto w0 = direct_power_with_wreath(GroupAction::trivial(Group::trivial(), Group::cyclic(3)), 2);
  CHECK(w0.wreath.order() == 2);
  for (u64 x = 0; x < 3; ++x)
    for (u64 y = 0; y < 3; ++y) CHECK(w0.action.apply(1, x + 3 * y) == y + 3 * x);

  // ((a,1),sigma).(x,y) = (y^-1, x)
  auto w = direct_power_with_wreath(inv, 2);
  CHECK(w.wreath.order() == 8);
  u64 elem = 1 + 4 * 1;  // (a,1) in A^2 is index 1; sigma is index 1 of S_2
  for (u64 x = 0; x < 3; ++x)
    for (u64 y = 0; y < 3; ++y) CHECK(w.action.apply(elem, x + 3 * y) == (3 - y) % 3 + 3 * x);
  CHECK_THROWS_AS(direct_power_with_wreath(inv, 0), ConstructionError);
}

TEST_CASE("symmetric group indexing") {
  for (unsigned n = 1; n <= 5; ++n) {
    u64 f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    for (u64 x = 0; x < f; ++x) CHECK(symmetric_rank(symmetric_unrank(n, x)) == x);
  }
  Group s4 = Group::symmetric(4);
  CHECK(s4.order() == 24);
  CHECK(derived_subgroup(s4).size() == 12);
}

TEST_CASE("small group corpus is pairwise distinct") {
  for (u64 order : {8u, 16u, 32u}) {
    std::set<std::string> prints;
    auto corpus = small_group_corpus(order);
    for (const auto& ng : corpus) {
      CHECK(ng.group.order() == order);
      prints.insert(group_fingerprint(ng.group));
    }
    CHECK(prints.size() == corpus.size());
  }
  CHECK(small_group_corpus(8).size() == 5);
  CHECK(small_group_corpus(16).size() == 14);
  CHECK(oracle::isomorphic(Group::semidirect(sl23_action()), Group::semidirect(sl23_action())));
  CHECK(derived_subgroup(Group::semidirect(sl23_action())).size() == 8);
  CHECK(derived_subgroup(Group::semidirect(a4_action())).size() == 4);
}

TEST_CASE("spec strings, descriptors and table files") {
  for (const char* spec : {"cyclic:6", "abelian:2x4", "dihedral:5", "quaternion", "dicyclic:3", "heis:3", "symmetric:3",
                           "prod:cyclic:2:quaternion", "pow:2:cyclic:3"}) {
    CAPTURE(spec);
    Group g = parse_group_spec(spec);
    Group back = group_from_descriptor(nlohmann::json::parse(g.descriptor().dump()));
    CHECK(back.order() == g.order());
    CHECK(back.cayley_table() == g.cayley_table());
  }
  CHECK_THROWS_AS(parse_group_spec("heis:4"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("cyclic"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("cyclic:3:extra"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("bogus:3"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("cyclic:x"), ParseError);

  std::string dir = std::string(IYB_TEST_TMPDIR);
  Group d8 = Group::dihedral(4);
  write_group_table(d8, dir + "/d8.tbl");
  Group t = parse_group_spec("table:" + dir + "/d8.tbl");
  CHECK(t.cayley_table() == d8.cayley_table());
  CHECK(group_fingerprint(t) == group_fingerprint(d8));
  Group t2 = group_from_descriptor(t.descriptor());
  CHECK(t2.cayley_table() == d8.cayley_table());

  write_action_file(s3_action(), dir + "/inv3.act");
  {
    std::ofstream c2(dir + "/c2.tbl");
    c2 << "2\n0 1\n1 0\n";
  }
  Group s3 = parse_group_spec("sdp:cyclic:3:cyclic:2:" + dir + "/inv3.act");
  CHECK(s3.order() == 6);
  CHECK(center(s3).size() == 1);
  Group s3b = group_from_descriptor(nlohmann::json::parse(s3.descriptor().dump()));
  CHECK(s3b.cayley_table() == s3.cayley_table());

  // non-associative Latin square with identity 0 (a loop of order 5)
  {
    std::ofstream bad(dir + "/bad.tbl");
    bad << "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
  }
  try {
    parse_group_spec("table:" + dir + "/bad.tbl");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("not associative") != std::string::npos);
  }
  {
    std::ofstream bad(dir + "/short.tbl");
    bad << "3\n0 1 2\n1 2 0\n";
  }
  CHECK_THROWS_AS(parse_group_spec("table:" + dir + "/short.tbl"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("table:" + dir + "/missing.tbl"), ParseError);
}

TEST_CASE("quotient groups") {
  Group h3 = Group::heisenberg(3);
  auto q = quotient_group(h3, center(h3));
  CHECK(q.group.order() == 9);
  CHECK(derived_subgroup(q.group) == ElementSet{0});
  for (u64 x = 0; x < 27; ++x)
    for (u64 y = 0; y < 27; ++y) REQUIRE(q.projection[h3.mul(x, y)] == q.group.mul(q.projection[x], q.projection[y]));
  Group s3 = Group::symmetric(3);
  CHECK_THROWS_AS(quotient_group(s3, subgroup_generated(s3, {s3.generators()[0]})), Error);
}
