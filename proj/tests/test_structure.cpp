#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "iyb/certificate.hpp"
#include "iyb/corpus.hpp"
#include "iyb/error.hpp"
#include "oracles.hpp"

using namespace iyb;

namespace {

VerifyOptions full_mode() {
  VerifyOptions o;
  o.mode = CocycleMode::Full;
  return o;
}
VerifyOptions generator_mode() {
  VerifyOptions o;
  o.mode = CocycleMode::Generators;
  o.samples = 0;
  return o;
}

// Independent transversal oracle: enumerate omega and I as sets.
bool transversal_oracle(const GroupRing& r, const HowellBasis& ideal) {
  auto w = oracle::enumerate_span(r.modulus(), r.rank(), r.omega(1).rows());
  auto i = oracle::enumerate_span(r.modulus(), r.rank(), ideal.rows());
  for (const auto& v : i)
    if (!w.count(v)) return false;
  if (w.size() != i.size() * r.rank()) return false;
  for (u64 x = 0; x < r.rank(); ++x)
    for (u64 y = x + 1; y < r.rank(); ++y) {
      Vec d(r.rank(), 0);
      d[y] = 1;
      d[x] = r.modulus() - 1;
      if (i.count(d)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("cocycle verification on a trivial module") {
  IYBStructure s = fixture::cyclic_trivial(3);
  CHECK(verify_structure(s, full_mode()).ok);
  CHECK(verify_structure(s, generator_mode()).ok);

  IYBStructure bad = s;
  bad.cocycle[2] = 1;  // chi(g^2) = 1 collides with chi(g)
  Report r = verify_cocycle(bad, full_mode());
  CHECK_FALSE(r.ok);
  CHECK(r.witness.find("g=") != std::string::npos);
  CHECK_FALSE(verify_cocycle(bad, generator_mode()).ok);
  CHECK_FALSE(verify_bijective(bad).ok);

  IYBStructure nonzero = s;
  nonzero.cocycle = {1, 2, 0};
  CHECK_FALSE(verify_cocycle(nonzero).ok);
}

TEST_CASE("module action must be a homomorphism") {
  // C_2 acting by 2 on Z/3 is fine; x -> 2x on Z/5 is not (2^2 != 1).
  CHECK(verify_module(GModule(Group::cyclic(2), {3}, {Matrix{{2}}})).ok);
  CHECK_FALSE(verify_module(GModule(Group::cyclic(2), {5}, {Matrix{{2}}})).ok);
  // matrix not respecting invariants: Z/2 + Z/4, entry mapping the Z/2 generator to 1 in Z/4
  CHECK_FALSE(verify_module(GModule(Group::cyclic(2), {2, 4}, {Matrix{{1, 0}, {1, 1}}})).ok);
  // table group without relators: Cayley-edge path
  Group t = Group::from_table(Group::cyclic(4).cayley_table());
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < t.generators().size(); ++i) mats.push_back(Matrix{{1}});
  CHECK(verify_module(GModule(t, {4}, mats)).ok);
}

TEST_CASE("hertweck structure at q = 5") {
  HertweckGroups h = hertweck_groups(5);
  IYBStructure s = hertweck_d_structure(h);
  const u64 q = 5;
  u64 d1 = heis_index(q, 1, 0, 0), d2 = heis_index(q, 0, 1, 0), d3 = heis_index(q, 0, 0, 1);
  CHECK(s.chi(d3) == Vec{1, 0, 0});
  CHECK(s.chi(d1) == Vec{0, 0, 3});
  CHECK(s.chi(d2) == Vec{0, 2, 0});
  u64 d1d2 = h.d.mul(d1, d2);
  CHECK(s.chi(d1d2) == Vec{2, 2, 3});
  CHECK(s.module.add(s.chi(d1), s.module.act(d1, s.chi(d2))) == s.chi(d1d2));

  Report r = verify_structure(s, full_mode());
  CHECK_MESSAGE(r.ok, r.summary());
  CHECK(verify_structure(s, generator_mode()).ok);

  // tau-equivariance at d3 and d1
  u64 tau = h.a.generators()[2];
  Matrix dt = delta_module(h, tau);
  CHECK(h.action.apply(tau, d3) == h.d.inv(d3));
  CHECK(s.chi(h.d.inv(d3)) == Vec{4, 0, 0});
  CHECK(apply_matrix(dt, s.chi(d3), {5, 5, 5}) == Vec{4, 0, 0});
  CHECK(h.action.apply(tau, d1) == d2);
  CHECK(apply_matrix(dt, s.chi(d1), {5, 5, 5}) == Vec{0, 2, 0});

  // explicit inverse
  for (u64 x = 0; x < h.d.order(); ++x) REQUIRE(hertweck_chi_inverse(q, s.chi(x)) == x);

  // negative control: drop the determinant twist
  IYBStructure bad = s;
  for (std::size_t i = 0; i < h.a.generators().size(); ++i) {
    u64 a = h.a.generators()[i];
    Mat2 di = delta_rep(h, h.a.inv(a));
    Matrix m(3, Vec(3, 0));
    m[0][0] = 1;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) m[1 + x][1 + y] = di[y][x];
    bad.equivariance->module_actions[i] = m;
  }
  Report rb = verify_equivariant(bad);
  CHECK_FALSE(rb.ok);
  CHECK(rb.check == "equivariance");
}

TEST_CASE("hertweck structure for other primes") {
  for (u64 q : {13u, 17u, 29u}) {
    CAPTURE(q);
    HertweckGroups h = hertweck_groups(q);
    IYBStructure s = hertweck_d_structure(h);
    Report r = verify_structure(s, generator_mode());
    CHECK_MESSAGE(r.ok, r.summary());
  }
  CHECK_THROWS_AS(hertweck_groups(6), ConstructionError);
  CHECK_THROWS_AS(hertweck_d_structure(hertweck_groups(7)), ConstructionError);
  // q = 3 mod 4 behind the override: the verifier decides
  for (u64 q : {3u, 7u, 11u}) {
    CAPTURE(q);
    IYBStructure s = hertweck_d_structure(hertweck_groups(q), true);
    CHECK(verify_structure(s).ok);
  }
}

TEST_CASE("transversal verification") {
  GroupRing c2(Group::cyclic(2), 4);
  HowellBasis i2 = c2.span({{2, 2}});
  auto t = verify_transversal(c2, i2, true);
  CHECK(t.ok);
  CHECK(t.index.to_u64() == 2);
  CHECK(t.pairwise_tests == 1);
  CHECK_FALSE(verify_transversal(c2, c2.omega(1)).ok);

  GroupRing c4(Group::cyclic(4), 16);
  std::vector<HowellBasis> candidates{
      zk::sum(c4.omega(2), zk::scale(c4.omega(1), 4)),
      zk::sum(c4.omega(2), zk::scale(c4.omega(1), 2)),
      c4.omega(2),
      c4.omega(3),
      zk::scale(c4.omega(1), 4),
  };
  for (const auto& i : candidates) {
    bool expect = transversal_oracle(c4, i);
    CHECK(verify_transversal(c4, i, true).ok == expect);
    CHECK(verify_transversal(c4, i, false).ok == expect);
  }
  // the base-case ideal omega^2 + 4 omega over Z/16 has index 4 and is a complement
  CHECK(verify_transversal(c4, candidates[0]).ok);
}

TEST_CASE("ideal to structure") {
  GroupRing c2(Group::cyclic(2), 4);
  IYBStructure s = ideal_to_structure(c2, c2.span({{2, 2}}));
  CHECK(s.module.invariants() == std::vector<u64>{2});
  CHECK(s.chi(1) == Vec{1});
  CHECK(verify_structure(s, full_mode()).ok);

  GroupRing c3(Group::cyclic(3), 27);
  HowellBasis i3 = zk::sum(c3.omega(2), zk::scale(c3.omega(1), 3));
  IYBStructure s3 = ideal_to_structure(c3, i3);
  CHECK(s3.module.invariants() == std::vector<u64>{3});
  for (u64 i = 0; i < 3; ++i) CHECK(s3.chi(i) == Vec{mulmod(i, s3.chi(1)[0], 3)});
  CHECK(verify_structure(s3, full_mode()).ok);

  CHECK_THROWS_AS(ideal_to_structure(c2, c2.omega(1)), ConstructionError);
  CHECK_THROWS_AS(ideal_to_structure(c2, c2.zero()), ConstructionError);
}

TEST_CASE("generator mode agrees with full mode") {
  std::vector<IYBStructure> all{fixture::cyclic_trivial(5), hertweck_d_structure(hertweck_groups(5)),
                                class2_odd(Group::heisenberg(3))};
  for (const auto& ng : small_group_corpus(8)) {
    GroupRing r(ng.group, default_modulus(ng.group));
    HowellBasis i = zk::sum(r.omega(2), zk::scale(r.omega(1), 2));
    if (verify_transversal(r, i).ok && r.is_left_ideal(i)) all.push_back(ideal_to_structure(r, i));
  }
  std::size_t n = all.size();
  for (std::size_t k = 0; k < n; ++k) {  // corrupted copies
    IYBStructure bad = all[k];
    std::size_t w = bad.module.rank();
    std::size_t at = (bad.group().order() / 2) * w;
    bad.cocycle[at] = (bad.cocycle[at] + 1) % bad.module.invariants()[0];
    all.push_back(bad);
  }
  for (const auto& s : all) {
    bool full = verify_cocycle(s, full_mode()).ok;
    CHECK(full == verify_cocycle(s, generator_mode()).ok);
  }
  for (std::size_t k = 0; k < n; ++k) CHECK(verify_cocycle(all[k], full_mode()).ok);
}

TEST_CASE("central elements") {
  IYBStructure s = hertweck_d_structure(hertweck_groups(5));
  const Group& g = s.group();
  for (u64 z : center(g))
    for (u64 x = 0; x < g.order(); ++x) {
      // chi(gz) = chi(zg) expanded
      Vec lhs = s.module.add(s.chi(x), s.module.act(x, s.chi(z)));
      Vec rhs = s.module.add(s.chi(z), s.module.act(z, s.chi(x)));
      REQUIRE(lhs == rhs);
    }
}

TEST_CASE("isomorphism of structures") {
  IYBStructure s = class2_odd(Group::heisenberg(3));
  REQUIRE(s.module.invariants() == std::vector<u64>{3, 3, 3});
  auto id = structures_isomorphic(s, s);
  REQUIRE(id);
  CHECK(*id == identity_matrix(3));

  Matrix p{{1, 1, 0}, {0, 1, 0}, {0, 2, 2}};
  Matrix pi{{1, 2, 0}, {0, 1, 0}, {0, 2, 2}};
  REQUIRE(multiply_matrices(p, pi, {3, 3, 3}) == identity_matrix(3));
  IYBStructure t = fixture::transport(s, p, pi);
  REQUIRE(verify_structure(t).ok);
  auto phi = structures_isomorphic(s, t);
  REQUIRE(phi);
  CHECK(*phi == p);

  // same module, different chi: not isomorphic when the forced map is not additive
  IYBStructure c5 = fixture::cyclic_trivial(5);
  IYBStructure sq = make_structure(c5.module, [](u64 x) { return Vec{x * x % 5}; });
  CHECK_FALSE(structures_isomorphic(c5, sq));
  // scaling by 2 is an isomorphism of trivial modules
  IYBStructure dbl = make_structure(c5.module, [](u64 x) { return Vec{2 * x % 5}; });
  auto two = structures_isomorphic(c5, dbl);
  REQUIRE(two);
  CHECK(*two == Matrix{{2}});
}

TEST_CASE("subgroup preimages") {
  IYBStructure s = class2_odd(Group::heisenberg(3));
  auto zero = subgroup_preimage_check(s, {});
  CHECK(zero.report.ok);
  CHECK(zero.preimage == ElementSet{0});
  auto all = subgroup_preimage_check(s, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(all.report.ok);
  CHECK(all.preimage.size() == 27);

  IYBStructure s3 =
      combine_semidirect(fixture::cyclic_trivial(2), fixture::cyclic_with_inversion(3), fixture::inversion_action(3));
  auto pre = subgroup_preimage_check(s3, {{1, 0}});
  CHECK(pre.report.ok);
  CHECK(pre.preimage == ElementSet{0, 1, 2});
  // preimage of a non-submodule subgroup is still tested honestly
  auto subs = module_submodules(s3);
  CHECK(subs.size() == 4);
  for (const auto& gens : subs) CHECK(subgroup_preimage_check(s3, gens).report.ok);
}

TEST_CASE("certificates round trip") {
  HertweckGroups h = hertweck_groups(5);
  IYBStructure s = hertweck_d_structure(h);
  Provenance prov{"hertweck-d", {{"q", 5}, {"zeta", h.zeta}}, std::nullopt};
  nlohmann::json cert = structure_certificate(s, prov, 5);
  std::string text = canonical_text(cert);
  nlohmann::json back = parse_certificate(text);
  CHECK(canonical_text(back) == text);
  auto check = verify_certificate(back);
  CHECK_MESSAGE(check.report.ok, check.report.summary());
  REQUIRE(check.structure);
  CHECK(structures_isomorphic(s, *check.structure));

  std::string path = std::string(IYB_TEST_TMPDIR) + "/h5.json";
  write_certificate(cert, path);
  CHECK(canonical_text(read_certificate(path)) == text);

  // corrupted cocycle entry
  nlohmann::json bad = back;
  bad["cocycle"]["images"][3 * 7 + 1] = (bad["cocycle"]["images"][3 * 7 + 1].get<u64>() + 1) % 5;
  auto bc = verify_certificate(bad);
  CHECK_FALSE(bc.report.ok);
  CHECK_FALSE(bc.report.witness.empty());

  CHECK_THROWS_AS(parse_certificate(text.substr(0, text.size() / 2)), ParseError);
  nlohmann::json wrong = back;
  wrong["cocycle"]["images"].erase(0);
  CHECK_THROWS_AS(verify_certificate(wrong), ParseError);
  nlohmann::json kind = back;
  kind["kind"] = "nonsense";
  CHECK_THROWS_AS(verify_certificate(kind), ParseError);

  // ideal certificates
  GroupRing c4(Group::cyclic(4), 16);
  HowellBasis i = zk::sum(c4.omega(2), zk::scale(c4.omega(1), 4));
  nlohmann::json ic = ideal_certificate(c4, i, nullptr, {"test", {}, 7});
  auto icheck = verify_certificate(parse_certificate(canonical_text(ic)));
  CHECK_MESSAGE(icheck.report.ok, icheck.report.summary());
  CHECK(icheck.transversal->pairwise_tests == 6);
  nlohmann::json ibad = ic;
  ibad["ideal"]["howell_rows"] = c4.omega(3).rows();
  CHECK_FALSE(verify_certificate(ibad).report.ok);
}
