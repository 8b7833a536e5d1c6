#include "selftest.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "iyb/certificate.hpp"
#include "iyb/constructors.hpp"
#include "iyb/corpus.hpp"
#include "iyb/error.hpp"
#include "iyb/parallel.hpp"
#include "iyb/search.hpp"
#include "oracles.hpp"

namespace iyb::selftest {

namespace fs = std::filesystem;

namespace {

// Thrown by require() inside a criterion body.
struct Failed {
  std::string why;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Failed{why};
}

void require_ok(const Report& r, const std::string& what) { require(r.ok, what + ": " + r.summary()); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Context {
  Options opt;
  fs::path dir;
  std::vector<std::string> emitted;  // certificate files written so far

  std::string emit(const nlohmann::json& cert, const std::string& name) {
    std::string path = (dir / name).string();
    write_certificate(cert, path);
    emitted.push_back(path);
    return path;
  }
  void log(const std::string& s) const {
    if (opt.verbose) std::cerr << "  " << s << "\n";
  }
};

// Writes a certificate, reads it back and verifies the copy from disk.
void emit_and_verify(Context& cx, const nlohmann::json& cert, const std::string& name, const VerifyOptions& vo = {}) {
  std::string path = cx.emit(cert, name);
  CertificateCheck chk = verify_certificate(read_certificate(path), vo);
  require_ok(chk.report, name + " from disk");
}

VerifyOptions generator_mode(unsigned jobs) {
  VerifyOptions v;
  v.mode = CocycleMode::Generators;
  v.jobs = jobs;
  return v;
}

// -- 1 ----------------------------------------------------------------------
std::string hertweck_block(Context& cx) {
  std::ostringstream out;
  std::vector<u64> qs{5, 13, 29};
  if (!cx.opt.quick) qs.push_back(97);
  for (u64 q : qs) {
    HertweckGroups h = hertweck_groups(q);
    IYBStructure s = hertweck_d_structure(h);
    const u64 n = h.d.order();
    VerifyOptions vo = q == 5 ? VerifyOptions{} : generator_mode(cx.opt.jobs);
    if (q == 5) vo.mode = CocycleMode::Full;
    require_ok(verify_cocycle(s, vo), "cocycle q=" + std::to_string(q));
    require_ok(verify_bijective(s), "bijectivity q=" + std::to_string(q));
    // every element recovered through the explicit inverse
    auto bad = parallel_find_failure(n, [&](u64 g) { return hertweck_chi_inverse(q, s.chi(g)) == g; }, cx.opt.jobs);
    require(!bad, "explicit inverse fails at element " + (bad ? std::to_string(*bad) : ""));
    require_ok(verify_equivariant(s), "equivariance (tau, alpha1, alpha2) q=" + std::to_string(q));
    emit_and_verify(cx, structure_certificate(s, Provenance{"hertweck-d", {{"q", q}}, std::nullopt}),
                    "hertweck-d-" + std::to_string(q) + ".json", generator_mode(cx.opt.jobs));
    out << "q=" << q << " |D|=" << n << " ";
    cx.log("hertweck q=" + std::to_string(q) + " ok");
  }
  return out.str();
}

// -- 2 ----------------------------------------------------------------------
std::string sandling_heis5(Context& cx) {
  HertweckGroups h = hertweck_groups(5);
  GroupAction alpha1 = h.action.pull_back(Group::cyclic(4), {h.a.generators()[0]});
  std::string act_path = (cx.dir / "alpha1.act").string();
  write_action_file(alpha1, act_path);
  GroupAction act = read_action_file(act_path, Group::cyclic(4), Group::heisenberg(5));
  SandlingResult res = class2_equivariant_sandling(act);
  std::vector<Perm> perms;
  for (u64 a = 0; a < 4; ++a) perms.push_back(act.perm_of(a));
  require(res.ring.is_stable(res.ideal, perms), "ideal is not H-stable");
  require(res.ring.is_left_ideal(res.ideal), "not a left ideal");
  require(res.transversal.ok, "transversal: " + res.transversal.witness);
  require(res.transversal.index == Cardinality::of(125), "index is not 125");
  require(res.transversal.pairwise_tests == 125 * 124 / 2, "pairwise test count");
  require(res.structure.equivariance.has_value(), "structure lacks the C4 action");
  require_ok(verify_structure(res.structure), "structure");
  emit_and_verify(cx, structure_certificate(res.structure, Provenance{"sandling", {{"group", "heis:5"}}, std::nullopt}),
                  "sandling-heis5.json");
  emit_and_verify(cx, ideal_certificate(res.ring, res.ideal, &act, Provenance{"sandling", {{"group", "heis:5"}}, std::nullopt}),
                  "sandling-heis5-ideal.json");
  return "[omega:I]=125, " + std::to_string(res.transversal.pairwise_tests) + " pairwise tests";
}

// -- 3 ----------------------------------------------------------------------
std::string uniqueness_echo(Context&) {
  HertweckGroups h = hertweck_groups(5);
  require(h.a.order() == 32, "|A| != 32");
  SandlingResult res = class2_equivariant_sandling(h.action);
  IYBStructure canon = hertweck_d_structure(h);
  auto phi = structures_isomorphic(res.structure, canon);
  require(phi.has_value(), "no forced isomorphism");
  return "phi is " + std::to_string(phi->size()) + "x" + std::to_string(phi->empty() ? 0 : (*phi)[0].size());
}

// -- 4 ----------------------------------------------------------------------
std::string cross_consistency(Context& cx) {
  std::ostringstream out;
  std::vector<u64> qs{3};
  if (!cx.opt.quick) qs.push_back(5);
  for (u64 q : qs) {
    Group d = Group::heisenberg(q);
    IYBStructure a = class2_odd(d);
    IYBStructure b = class2_equivariant_sandling(GroupAction::trivial(Group::cyclic(2), d)).structure;
    std::size_t checked = 0;
    for (const IYBStructure* s : {&a, &b}) {
      require_ok(verify_structure(*s), "structure q=" + std::to_string(q));
      for (const auto& gens : module_submodules(*s)) {
        require_ok(subgroup_preimage_check(*s, gens).report, "preimage q=" + std::to_string(q));
        ++checked;
      }
    }
    out << "heis:" << q << " " << checked << " submodules ";
  }
  return out.str();
}

// -- 5 ----------------------------------------------------------------------
std::string heuristic(Context& cx) {
  SearchConfig cfg;
  cfg.seed = 42;
  cfg.max_restarts = 100;
  cfg.jobs = cx.opt.jobs;
  struct Job {
    std::string name;
    Group g;
  };
  std::vector<Job> jobs;
  for (auto& ng : small_group_corpus(8)) jobs.push_back({ng.name, ng.group});
  if (!cx.opt.quick) {
    for (auto& ng : small_group_corpus(16)) {
      // order 16 goes through the table format
      std::string path = (cx.dir / ("order16-" + ng.name + ".tbl")).string();
      write_group_table(ng.group, path);
      jobs.push_back({ng.name, read_group_table(path)});
    }
  }
  jobs.push_back({"heis3", Group::heisenberg(3)});
  if (!cx.opt.quick)
    for (auto& ng : small_group_corpus(32)) jobs.push_back({ng.name, ng.group});
  std::map<u64, int> done;
  u64 restarts = 0;
  for (const auto& j : jobs) {
    SearchResult r = heuristic_lift(j.g, cfg);
    restarts += r.restart + 1;
    nlohmann::json params{{"group", j.name}, {"restart", r.restart}, {"k", r.k}, {"max_restarts", cfg.max_restarts}};
    nlohmann::json cert = ideal_certificate(r.ring, r.ideal, nullptr, Provenance{"heuristic", params, cfg.seed});
    emit_and_verify(cx, cert, "heuristic-" + std::to_string(j.g.order()) + "-" + j.name + ".json");
    ++done[j.g.order()];
    cx.log("heuristic " + j.name + " restart " + std::to_string(r.restart));
  }
  if (!cx.opt.quick) {
    require(done[8] == 5, "order 8 incomplete");
    require(done[16] == 14, "order 16 incomplete");
    require(done[32] >= 5, "fewer than 5 groups of order 32");
  }
  std::ostringstream out;
  for (auto [o, c] : done) out << c << " of order " << o << ", ";
  out << restarts << " restarts";
  return out.str();
}

// -- 6 ----------------------------------------------------------------------
std::string containment(Context& cx) {
  // counts from the first run of the enumerator, checked by hand at k = 1
  const std::map<std::string, std::vector<std::size_t>> expected{
      {"cyclic:2", {1, 1, 1}}, {"cyclic:3", {1, 1, 1}}, {"cyclic:4", {1, 2, 2}}, {"abelian:2x2", {1, 4, 4}}};
  unsigned kmax = cx.opt.quick ? 2 : 3;
  std::size_t hits = 0;
  for (const auto& [spec, counts] : expected) {
    Group g = parse_group_spec(spec);
    for (unsigned k = 1; k <= kmax; ++k) {
      auto list = brute_force_ideals(g, k);
      require(list.size() == counts[k - 1], spec + " k=" + std::to_string(k) + ": " + std::to_string(list.size()) +
                                                 " ideals, expected " + std::to_string(counts[k - 1]));
      SearchConfig cfg;
      cfg.k = k;
      cfg.max_restarts = 20;
      cfg.jobs = cx.opt.jobs;
      SearchResult r = heuristic_lift(g, cfg);
      const auto& pool = r.k == k ? list : brute_force_ideals(g, r.k);
      bool found = false;
      for (const auto& x : pool) found = found || x.rows() == r.ideal.rows();
      require(found, spec + " k=" + std::to_string(k) + ": heuristic ideal not in the brute-force list");
      ++hits;
    }
  }
  return std::to_string(hits) + " (group, k) pairs contained";
}

// -- 7 ----------------------------------------------------------------------
std::string probes(Context& cx) {
  struct P {
    std::string name;
    Group g;
  };
  for (const P& p : {P{"D8", Group::dihedral(4)}, P{"Q8", Group::quaternion()}, P{"heis3", Group::heisenberg(3)}}) {
    GroupRing r(p.g, default_modulus(p.g, 2));
    auto inv = structural_invariants(p.g);
    const auto& lcs = inv.lower_central_series;
    ElementSet g2 = lcs.size() > 1 ? lcs[1] : ElementSet{0};
    ElementSet g3 = lcs.size() > 2 ? lcs[2] : ElementSet{0};
    require(dimension_subgroup_probe(r, 2) == g2, p.name + ": probe(2) != [G,G]");
    require(dimension_subgroup_probe(r, 3) == g3, p.name + ": probe(3) != [[G,G],G]");
  }
  std::size_t n = 0;
  std::vector<u64> orders{8};
  if (!cx.opt.quick) orders = {8, 16, 32};
  for (u64 o : orders) {
    for (auto& ng : small_group_corpus(o)) {
      auto rep = abelianization_iso_check(GroupRing(ng.group, default_modulus(ng.group, 1)));
      require(rep.ok && rep.size == rep.omega_quotient, ng.name + ": |omega/omega^2| != |G/[G,G]| " + rep.failure);
      ++n;
    }
  }
  return "probes on D8, Q8, heis3; abelianization on " + std::to_string(n) + " groups";
}

// -- 8 ----------------------------------------------------------------------
std::string assemblies(Context& cx) {
  SearchConfig cfg;
  cfg.jobs = cx.opt.jobs;
  HertweckGroups h = hertweck_groups(5);
  struct A {
    std::string name;
    GroupAction act;
    u64 order;
  };
  std::vector<A> list{{"S3", s3_action(), 6}, {"A4", a4_action(), 12}, {"SL23", sl23_action(), 24}};
  if (!cx.opt.quick) list.push_back({"D5xC4", h.action.pull_back(Group::cyclic(4), {h.a.generators()[0]}), 500});
  std::ostringstream out;
  for (const auto& a : list) {
    Group g = Group::semidirect(a.act);
    SearchOutcome o = iyb_search(g, SearchHints{a.act}, cfg);
    require(o.structure.group().order() == a.order, a.name + ": wrong order");
    require_ok(verify_structure(o.structure), a.name);
    emit_and_verify(cx, o.certificate, "assembly-" + a.name + ".json");
    out << a.name << " ";
  }
  return out.str();
}

// -- 9 ----------------------------------------------------------------------
std::string linalg(Context& cx) {
  struct Ambient {
    u64 m;
    std::size_t r;
  };
  const Ambient ambients[] = {{4, 3}, {8, 2}, {9, 2}};
  const int trials = cx.opt.quick ? 100 : 1000;
  std::mt19937_64 rng(20240501);
  auto random_rows = [&](u64 m, std::size_t rank) {
    std::vector<Vec> rows(1 + rng() % 3, Vec(rank));
    for (auto& r : rows)
      for (auto& x : r) x = rng() % m;
    return rows;
  };
  std::size_t n = 0;
  for (const auto& amb : ambients) {
    const auto all = oracle::all_vectors(amb.m, amb.r);
    for (int t = 0; t < trials; ++t) {
      auto g1 = random_rows(amb.m, amb.r), g2 = random_rows(amb.m, amb.r);
      HowellBasis b1 = zk::span_of(amb.m, amb.r, g1), b2 = zk::span_of(amb.m, amb.r, g2);
      auto e1 = oracle::enumerate_span(amb.m, amb.r, g1), e2 = oracle::enumerate_span(amb.m, amb.r, g2);
      auto elems = [](const HowellBasis& b) { return oracle::enumerate_span(b.modulus(), b.rank(), b.rows()); };
      std::string where = "Z/" + std::to_string(amb.m) + "^" + std::to_string(amb.r) + " trial " + std::to_string(t);
      require(elems(b1) == e1, "howell span " + where);
      std::vector<Vec> alt(e1.rbegin(), e1.rend());
      require(zk::span_of(amb.m, amb.r, alt) == b1, "canonical form " + where);
      for (const auto& v : all) require(b1.contains(v) == (e1.count(v) == 1), "membership " + where);
      auto both = g1;
      both.insert(both.end(), g2.begin(), g2.end());
      require(elems(zk::sum(b1, b2)) == oracle::enumerate_span(amb.m, amb.r, both), "sum " + where);
      require(elems(zk::intersection(b1, b2)) == oracle::set_intersection(e1, e2), "intersection " + where);
      require(zk::submodule_index(b1).to_u64() == all.size() / e1.size(), "index " + where);
      ++n;
    }
  }
  return std::to_string(n) + " instances";
}

// -- 10 ---------------------------------------------------------------------
std::string round_trip(Context& cx) {
  require(!cx.emitted.empty(), "no certificates were emitted");
  for (const auto& path : cx.emitted) {
    std::string bytes = slurp(path);
    nlohmann::json c = parse_certificate(bytes);
    require(canonical_text(c) == bytes, path + ": re-serialization differs");
    VerifyOptions vo = generator_mode(cx.opt.jobs);
    require_ok(verify_certificate(c, vo).report, path);
  }
  // deterministic mode: same seed, same bytes, independent of the worker count
  SearchConfig a;
  a.seed = 42;
  a.jobs = 1;
  SearchConfig b = a;
  b.jobs = std::max(2u, cx.opt.jobs);
  Group g = Group::heisenberg(3);
  auto text = [&](const SearchConfig& cfg) {
    SearchResult r = heuristic_lift(g, cfg);
    return canonical_text(ideal_certificate(r.ring, r.ideal, nullptr,
                                            Provenance{"heuristic", {{"restart", r.restart}, {"k", r.k}}, cfg.seed}));
  };
  require(text(a) == text(b), "heuristic certificates differ between runs");
  HertweckGroups h = hertweck_groups(5);
  auto hert = [&] { return canonical_text(structure_certificate(hertweck_d_structure(h), Provenance{"hertweck-d", {{"q", 5}}, {}})); };
  require(hert() == hert(), "hertweck certificates differ between runs");
  return std::to_string(cx.emitted.size()) + " certificates re-verified byte-identically";
}

}  // namespace

std::string format_line(const Criterion& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.2f s / %.0f s)", c.seconds, c.budget);
  std::string line = std::string(c.pass ? "[PASS] " : "[FAIL] ") + std::to_string(c.id) + " " + c.name + " " + buf;
  if (!c.pass) line += " [" + c.modules + "]";
  if (!c.detail.empty()) line += " " + c.detail;
  return line;
}

std::vector<Criterion> run(const Options& opt) {
  Context cx;
  cx.opt = opt;
  if (opt.workdir.empty()) {
    cx.dir = fs::temp_directory_path() / ("iyb-selftest-" + std::to_string(::getpid()));
  } else {
    cx.dir = opt.workdir;
  }
  fs::create_directories(cx.dir);

  struct Spec {
    int id;
    const char* name;
    const char* modules;
    double budget;
    std::function<std::string(Context&)> body;
  };
  const std::vector<Spec> specs{
      {1, "hertweck building block", "group-core, iyb-core, constructors", 60, hertweck_block},
      {2, "sandling pipeline on heis:5 with alpha1", "modgroupring, zk-linalg, constructors", 10, sandling_heis5},
      {3, "uniqueness echo at q = 5", "constructors, iyb-core", 10, uniqueness_echo},
      {4, "cross-construction consistency", "constructors, iyb-core", 30, cross_consistency},
      {5, "heuristic search", "search, modgroupring, zk-linalg", 300, heuristic},
      {6, "oracle containment", "search, zk-linalg", 120, containment},
      {7, "dimension subgroup probes", "modgroupring, group-core", 60, probes},
      {8, "solvable assemblies", "search, constructors", 60, assemblies},
      {9, "linear algebra oracle suite", "zk-linalg", 60, linalg},
      {10, "round trip and determinism", "iyb-core, search", 60, round_trip},
  };
  std::vector<Criterion> out;
  for (const auto& s : specs) {
    Criterion c{s.id, s.name, s.modules, false, 0, s.budget, ""};
    if (opt.verbose) std::cerr << "criterion " << s.id << ": " << s.name << "\n";
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.detail = s.body(cx);
      c.pass = true;
    } catch (const Failed& f) {
      c.detail = f.why;
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.pass && c.seconds > c.budget) {
      c.pass = false;
      c.detail += " (over budget)";
    }
    out.push_back(std::move(c));
  }
  if (opt.workdir.empty()) {
    std::error_code ec;
    fs::remove_all(cx.dir, ec);
  }
  return out;
}

}  // namespace iyb::selftest
