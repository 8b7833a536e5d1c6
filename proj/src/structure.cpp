#include "iyb/structure.hpp"

#include <mutex>
#include <random>
#include <set>

#include "iyb/error.hpp"
#include "iyb/parallel.hpp"

namespace iyb {

namespace {

constexpr u64 kCacheAllLimit = u64{1} << 16;
constexpr u64 kEdgeCheckLimit = u64{1} << 20;

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

bool same_matrix(const Matrix& a, const Matrix& b, const std::vector<u64>& inv) {
  return reduce_matrix(a, inv) == reduce_matrix(b, inv);
}

Matrix word_matrix(const Word& w, const std::vector<Matrix>& mats, const std::vector<u64>& inv) {
  Matrix m = reduce_matrix(identity_matrix(inv.size()), inv);
  for (auto letter : w) m = multiply_matrices(m, mats.at(letter), inv);
  return m;
}

// mats[i] is the image of g.generators()[i]; checks that they define a
// homomorphism g -> End(M) fixing the identity.
Report check_matrix_hom(const Group& g, const std::vector<Matrix>& mats, const std::vector<u64>& inv,
                        const std::string& what) {
  Report rep;
  if (mats.size() != g.generators().size())
    return rep.fail(what, "expected " + std::to_string(g.generators().size()) + " matrices, got " +
                              std::to_string(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i)
    if (!respects_invariants(mats[i], inv)) return rep.fail(what, "matrix " + std::to_string(i) + " does not respect the invariants");
  const Matrix id = reduce_matrix(identity_matrix(inv.size()), inv);
  if (auto rels = g.relators()) {
    for (std::size_t r = 0; r < rels->size(); ++r)
      if (!same_matrix(word_matrix((*rels)[r], mats, inv), id, inv))
        return rep.fail(what, "relator " + std::to_string(r) + " does not act trivially");
    rep.notes.push_back(what + ": " + std::to_string(rels->size()) + " relators");
    return rep;
  }
  if (g.order() > kEdgeCheckLimit) throw ResourceLimit(what + ": group too large for a Cayley-edge check");
  std::vector<Matrix> all(g.order());
  std::vector<char> have(g.order(), 0);
  all[0] = id;
  have[0] = 1;
  std::vector<u64> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    u64 x = queue[head];
    for (std::size_t i = 0; i < mats.size(); ++i) {
      u64 y = g.mul(x, g.generators()[i]);
      Matrix m = multiply_matrices(all[x], mats[i], inv);
      if (!have[y]) {
        all[y] = std::move(m);
        have[y] = 1;
        queue.push_back(y);
      } else if (!same_matrix(all[y], m, inv)) {
        return rep.fail(what, "inconsistent matrix for element " + std::to_string(y));
      }
    }
  }
  rep.notes.push_back(what + ": all Cayley edges");
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------

struct GModule::Cache {
  std::once_flag once;
  std::vector<Matrix> all;
};

GModule::GModule() : cache_(std::make_shared<Cache>()) {}

GModule::GModule(Group g, std::vector<u64> invariants, std::vector<Matrix> generator_actions)
    : group_(std::move(g)), invariants_(std::move(invariants)), actions_(std::move(generator_actions)),
      cache_(std::make_shared<Cache>()) {
  for (u64 m : invariants_)
    if (m < 2) throw Error("module invariants must be at least 2");
  if (actions_.size() != group_.generators().size())
    throw Error("module: expected one action matrix per generator (" + std::to_string(group_.generators().size()) + ")");
  for (auto& a : actions_) {
    if (a.size() != rank()) throw Error("module: action matrix has the wrong number of rows");
    for (const auto& row : a)
      if (row.size() != rank()) throw Error("module: action matrix has the wrong number of columns");
    a = reduce_matrix(std::move(a), invariants_);
  }
}

GModule GModule::trivial(Group g, std::vector<u64> invariants) {
  std::size_t r = invariants.size();
  std::vector<Matrix> acts(g.generators().size(), identity_matrix(r));
  return GModule(std::move(g), std::move(invariants), std::move(acts));
}

Cardinality GModule::size() const {
  Cardinality c = Cardinality::of(1);
  for (u64 m : invariants_) c *= Cardinality::of(m);
  return c;
}

bool GModule::is_reduced(const Vec& x) const {
  if (x.size() != rank()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= invariants_[i]) return false;
  return true;
}

Matrix GModule::action_of(u64 g) const {
  if (group_.order() <= kCacheAllLimit) {
    std::call_once(cache_->once, [this] {
      const u64 n = group_.order();
      std::vector<Matrix> all(n);
      std::vector<char> have(n, 0);
      all[0] = reduce_matrix(identity_matrix(rank()), invariants_);
      have[0] = 1;
      std::vector<u64> queue{0};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        u64 x = queue[head];
        for (std::size_t i = 0; i < actions_.size(); ++i) {
          u64 y = group_.mul(x, group_.generators()[i]);
          if (!have[y]) {
            all[y] = multiply_matrices(all[x], actions_[i], invariants_);
            have[y] = 1;
            queue.push_back(y);
          }
        }
      }
      cache_->all = std::move(all);
    });
    return cache_->all.at(g);
  }
  return word_matrix(group_.factor(g), actions_, invariants_);
}

Vec GModule::act(u64 g, const Vec& x) const {
  if (group_.order() <= kCacheAllLimit) return apply_matrix(action_of(g), x, invariants_);
  Word w = group_.factor(g);
  Vec y = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it) y = apply_matrix(actions_[*it], y, invariants_);
  return y;
}

Vec IYBStructure::chi(u64 g) const {
  const std::size_t r = module.rank();
  if (g >= group().order()) throw std::out_of_range("chi: element out of range");
  auto it = cocycle.begin() + static_cast<std::ptrdiff_t>(g * r);
  return Vec(it, it + static_cast<std::ptrdiff_t>(r));
}

Matrix IYBStructure::equivariance_matrix(u64 a) const {
  if (!equivariance) throw Error("structure has no equivariance data");
  return word_matrix(equivariance->action.actor().factor(a), equivariance->module_actions, module.invariants());
}

Matrix element_matrix(const Group& g, const std::vector<Matrix>& generator_mats, const std::vector<u64>& invariants,
                      u64 x) {
  return word_matrix(g.factor(x), generator_mats, invariants);
}

// ---------------------------------------------------------------------------
// Verification

Report verify_module(const GModule& m) { return check_matrix_hom(m.group(), m.generator_actions(), m.invariants(), "module action"); }

Report verify_cocycle(const IYBStructure& s, const VerifyOptions& opt) {
  Report rep;
  const GModule& m = s.module;
  const Group& g = s.group();
  const u64 n = g.order();
  const std::size_t r = m.rank();
  const auto& inv = m.invariants();
  if (s.cocycle.size() != n * r) return rep.fail("cocycle", "table has the wrong size");
  for (u64 x = 0; x < n; ++x)
    if (!m.is_reduced(s.chi(x))) return rep.fail("cocycle", "chi(" + std::to_string(x) + ") is not reduced");
  if (!m.is_reduced(s.chi(0)) || s.chi(0) != m.zero()) return rep.fail("cocycle", "chi(e) != 0");

  const u64* tab = s.cocycle.data();
  // chi(x y) == chi(x) + mat * chi(y)
  auto law_holds = [&](u64 x, u64 y, const Matrix& mat) {
    const u64* cx = tab + x * r;
    const u64* cy = tab + y * r;
    const u64* cxy = tab + g.mul(x, y) * r;
    for (std::size_t i = 0; i < r; ++i) {
      u64 mod = inv[i], acc = cx[i];
      for (std::size_t j = 0; j < r; ++j)
        if (mat[i][j] && cy[j]) acc = addmod(acc, mulmod(mat[i][j], cy[j] % mod, mod), mod);
      if (acc != cxy[i]) return false;
    }
    return true;
  };

  bool full = opt.mode == CocycleMode::Full || (opt.mode == CocycleMode::Auto && n <= opt.full_limit);
  if (full) {
    if (n > kCacheAllLimit) throw ResourceLimit("full cocycle check needs |G| <= 65536");
    auto bad = parallel_find_failure(
        n,
        [&](u64 x) {
          const Matrix& mat = m.action_of(x);
          for (u64 y = 0; y < n; ++y)
            if (!law_holds(x, y, mat)) return false;
          return true;
        },
        opt.jobs);
    if (bad) {
      u64 x = *bad, y = 0;
      while (law_holds(x, y, m.action_of(x))) ++y;
      return rep.fail("cocycle", "chi(gh) != chi(g) + g chi(h) at g=" + std::to_string(x) + ", h=" + std::to_string(y));
    }
    rep.notes.push_back("cocycle: full mode, " + std::to_string(n * n) + " pairs");
    return rep;
  }

  const auto& gens = g.generators();
  const auto& mats = m.generator_actions();
  auto bad = parallel_find_failure(
      n,
      [&](u64 y) {
        for (std::size_t i = 0; i < gens.size(); ++i)
          if (!law_holds(gens[i], y, mats[i])) return false;
        return true;
      },
      opt.jobs);
  if (bad) {
    std::size_t i = 0;
    while (law_holds(gens[i], *bad, mats[i])) ++i;
    return rep.fail("cocycle", "chi(sh) != chi(s) + s chi(h) at s=" + std::to_string(gens[i]) + ", h=" + std::to_string(*bad));
  }
  rep.notes.push_back("cocycle: generator mode, " + std::to_string(n * gens.size()) + " pairs");
  if (opt.samples > 0 && n > 1) {
    std::mt19937_64 rng(opt.sample_seed);
    std::uniform_int_distribution<u64> pick(0, n - 1);
    for (u64 t = 0; t < opt.samples; ++t) {
      u64 x = pick(rng), y = pick(rng);
      Vec lhs = s.chi(g.mul(x, y));
      Vec rhs = m.add(s.chi(x), m.act(x, s.chi(y)));
      if (lhs != rhs)
        return rep.fail("cocycle", "sampled pair fails at g=" + std::to_string(x) + ", h=" + std::to_string(y));
    }
    rep.notes.push_back("cocycle: " + std::to_string(opt.samples) + " sampled pairs");
  }
  return rep;
}

Report verify_bijective(const IYBStructure& s) {
  Report rep;
  const u64 n = s.group().order();
  if (!(s.module.size() == Cardinality::of(n)))
    return rep.fail("bijective", "|M| = " + s.module.size().str() + " but |G| = " + std::to_string(n));
  std::vector<u64> seen(n, ~u64{0});
  for (u64 x = 0; x < n; ++x) {
    Vec c = s.chi(x);
    if (!s.module.is_reduced(c)) return rep.fail("bijective", "chi(" + std::to_string(x) + ") is not reduced");
    u64 code = encode_vector(c, s.module.invariants());
    if (seen[code] != ~u64{0})
      return rep.fail("bijective", "chi(" + std::to_string(seen[code]) + ") = chi(" + std::to_string(x) + ") = " + vec_str(c));
    seen[code] = x;
  }
  return rep;
}

Report verify_equivariant(const IYBStructure& s) {
  Report rep;
  if (!s.equivariance) {
    rep.notes.push_back("equivariance: none");
    return rep;
  }
  const Equivariance& eq = *s.equivariance;
  const Group& g = s.group();
  const Group& a = eq.action.actor();
  const auto& inv = s.module.invariants();
  if (!eq.action.target().same_as(g)) return rep.fail("equivariance", "action is on a different group");
  rep.merge(check_matrix_hom(a, eq.module_actions, inv, "equivariance module action"));
  if (!rep.ok) return rep;
  const auto& perms = eq.action.generator_images();
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const Matrix& da = eq.module_actions[i];
    for (std::size_t j = 0; j < g.generators().size(); ++j) {
      Matrix lhs = multiply_matrices(da, s.module.generator_actions()[j], inv);
      Matrix rhs = multiply_matrices(s.module.action_of(perms[i][g.generators()[j]]), da, inv);
      if (!same_matrix(lhs, rhs, inv))
        return rep.fail("equivariance",
                        "a(g x) != (^a g)(a x) for A-generator " + std::to_string(i) + ", G-generator " + std::to_string(j));
    }
  }
  const u64 n = g.order();
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const Matrix& da = eq.module_actions[i];
    auto bad = parallel_find_failure(n, [&](u64 x) { return s.chi(perms[i][x]) == apply_matrix(da, s.chi(x), inv); });
    if (bad)
      return rep.fail("equivariance", "chi(^a g) != a chi(g) for A-generator " + std::to_string(i) + ", g=" +
                                          std::to_string(*bad) + ": " + vec_str(s.chi(perms[i][*bad])) +
                                          " vs " + vec_str(apply_matrix(da, s.chi(*bad), inv)));
  }
  rep.notes.push_back("equivariance: " + std::to_string(perms.size()) + " generators of A on all elements");
  return rep;
}

Report verify_structure(const IYBStructure& s, const VerifyOptions& opt) {
  Report rep = verify_module(s.module);
  if (!rep.ok) return rep;
  rep.merge(verify_cocycle(s, opt));
  if (!rep.ok) return rep;
  rep.merge(verify_bijective(s));
  if (!rep.ok) return rep;
  rep.merge(verify_equivariant(s));
  return rep;
}

// ---------------------------------------------------------------------------
// Ideals

TransversalReport verify_transversal(const GroupRing& r, const HowellBasis& ideal, bool exact) {
  TransversalReport rep;
  const HowellBasis& w = r.omega(1);
  if (!w.contains_all(ideal)) {
    rep.witness = "ideal is not inside omega";
    return rep;
  }
  rep.index = zk::relative_index(w, ideal);
  const u64 n = r.rank();
  if (!(rep.index == Cardinality::of(n))) {
    rep.witness = "[omega : I] = " + rep.index.str() + ", expected " + std::to_string(n);
    return rep;
  }
  if (exact) {
    for (u64 x = 0; x < n; ++x)
      for (u64 y = x + 1; y < n; ++y) {
        ++rep.pairwise_tests;
        Vec d = r.basis(y);
        Vec bx = r.basis(x);
        for (std::size_t i = 0; i < n; ++i) d[i] = submod(d[i], bx[i], r.modulus());
        if (ideal.contains(d)) {
          rep.witness = "1 - " + std::to_string(x) + " and 1 - " + std::to_string(y) + " are congruent mod I";
          return rep;
        }
      }
  } else {
    std::map<Vec, u64> seen;
    for (u64 x = 0; x < n; ++x) {
      auto [it, fresh] = seen.emplace(ideal.reduce(r.one_minus(x)), x);
      if (!fresh) {
        rep.witness = "1 - " + std::to_string(it->second) + " and 1 - " + std::to_string(x) + " are congruent mod I";
        return rep;
      }
    }
  }
  rep.ok = true;
  return rep;
}

IYBStructure ideal_to_structure(const GroupRing& r, const HowellBasis& ideal, const GroupAction* action) {
  if (!r.is_left_ideal(ideal)) throw ConstructionError("ideal_to_structure: not a left ideal");
  auto tr = verify_transversal(r, ideal);
  if (!tr.ok) throw ConstructionError("ideal_to_structure: " + tr.witness);
  zk::QuotientModule q(r.omega(1), ideal);
  const Group& g = r.group();
  const std::size_t d = q.dimension();
  auto matrix_of = [&](auto&& image) {
    Matrix mat(d, Vec(d, 0));
    for (std::size_t j = 0; j < d; ++j) {
      Vec c = q.coordinates(image(q.generators()[j]));
      for (std::size_t i = 0; i < d; ++i) mat[i][j] = c[i];
    }
    return mat;
  };
  std::vector<Matrix> acts;
  for (u64 s : g.generators()) acts.push_back(matrix_of([&](const Vec& v) { return r.left_mul(s, v); }));
  GModule m(g, q.invariants(), std::move(acts));
  std::optional<Equivariance> eq;
  if (action) {
    if (!action->target().same_as(g)) throw ConstructionError("ideal_to_structure: action on a different group");
    if (!r.is_stable(ideal, action->generator_images()))
      throw ConstructionError("ideal_to_structure: ideal is not stable under the acting group");
    std::vector<Matrix> mats;
    for (const auto& p : action->generator_images())
      mats.push_back(matrix_of([&](const Vec& v) { return r.apply_automorphism(p, v); }));
    eq = Equivariance{*action, std::move(mats)};
  }
  return make_structure(std::move(m), [&](u64 x) { return q.coordinates(r.one_minus(x)); }, std::move(eq));
}

// ---------------------------------------------------------------------------

std::optional<Matrix> structures_isomorphic(const IYBStructure& s1, const IYBStructure& s2) {
  const u64 n = s1.group().order();
  if (s2.group().order() != n || !s1.group().same_as(s2.group())) return std::nullopt;
  if (!verify_bijective(s1).ok || !verify_bijective(s2).ok) return std::nullopt;
  const auto& inv1 = s1.module.invariants();
  const auto& inv2 = s2.module.invariants();
  std::vector<u64> pre(n);  // code in M1 -> element
  for (u64 x = 0; x < n; ++x) pre[encode_vector(s1.chi(x), inv1)] = x;
  auto phi = [&](const Vec& v) { return s2.chi(pre[encode_vector(v, inv1)]); };

  const std::size_t r1 = inv1.size(), r2 = inv2.size();
  std::vector<Vec> units;
  for (std::size_t i = 0; i < r1; ++i) {
    Vec e(r1, 0);
    e[i] = 1;
    units.push_back(e);
  }
  std::vector<Vec> img;
  for (const auto& e : units) img.push_back(phi(e));
  for (u64 code = 0; code < n; ++code) {
    Vec x = decode_vector(code, inv1);
    Vec px = phi(x);
    for (std::size_t i = 0; i < r1; ++i)
      if (phi(s1.module.add(x, units[i])) != s2.module.add(px, img[i])) return std::nullopt;
  }
  Matrix mat(r2, Vec(r1, 0));
  for (std::size_t i = 0; i < r2; ++i)
    for (std::size_t j = 0; j < r1; ++j) mat[i][j] = img[j][i];

  for (std::size_t k = 0; k < s1.group().generators().size(); ++k)
    for (std::size_t i = 0; i < r1; ++i)
      if (phi(s1.module.act_generator(k, units[i])) != s2.module.act_generator(k, img[i])) return std::nullopt;

  if (s1.equivariance && s2.equivariance) {
    const auto& e1 = *s1.equivariance;
    const auto& e2 = *s2.equivariance;
    if (!e1.action.actor().same_as(e2.action.actor()) || e1.action.generator_images() != e2.action.generator_images())
      return std::nullopt;
    for (std::size_t k = 0; k < e1.module_actions.size(); ++k)
      for (std::size_t i = 0; i < r1; ++i)
        if (phi(apply_matrix(e1.module_actions[k], units[i], inv1)) != apply_matrix(e2.module_actions[k], img[i], inv2))
          return std::nullopt;
  }
  return mat;
}

PreimageReport subgroup_preimage_check(const IYBStructure& s, const std::vector<Vec>& gens) {
  PreimageReport out;
  const GModule& m = s.module;
  const Group& g = s.group();
  std::set<Vec> span{m.zero()};
  std::vector<Vec> frontier{m.zero()};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& x : frontier)
      for (const auto& v : gens) {
        Vec y = m.add(x, v);
        if (span.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
    if (span.size() > g.order()) break;
  }
  for (u64 x = 0; x < g.order(); ++x)
    if (span.count(s.chi(x))) out.preimage.push_back(x);
  const auto& p = out.preimage;
  if (p.size() != span.size()) {
    out.report.fail("preimage", "|chi^-1(S)| = " + std::to_string(p.size()) + " but |S| = " + std::to_string(span.size()));
    return out;
  }
  if (static_cast<double>(p.size()) * static_cast<double>(p.size()) > 1e8)
    throw ResourceLimit("subgroup_preimage_check: preimage too large for a pairwise check");
  std::vector<char> in(g.order(), 0);
  for (u64 x : p) in[x] = 1;
  for (u64 x : p) {
    if (!in[g.inv(x)]) {
      out.report.fail("preimage", "not closed under inverses at " + std::to_string(x));
      return out;
    }
    for (u64 y : p)
      if (!in[g.mul(x, y)]) {
        out.report.fail("preimage", "not closed under products at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
        return out;
      }
  }
  return out;
}

std::vector<std::vector<Vec>> module_submodules(const IYBStructure& s, bool with_equivariance, std::size_t limit) {
  const GModule& m = s.module;
  const auto& inv = m.invariants();
  const std::size_t r = m.rank();
  if (r == 0) return {{}};
  u64 l = 1;
  for (u64 x : inv) l = std::lcm(l, x);
  auto embed = [&](const Vec& x) {
    Vec y(r);
    for (std::size_t i = 0; i < r; ++i) y[i] = (x[i] % inv[i]) * (l / inv[i]);
    return y;
  };
  auto unembed = [&](const Vec& y) {
    Vec x(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = y[i] / (l / inv[i]);
    return x;
  };
  std::vector<Matrix> mats = m.generator_actions();
  if (with_equivariance && s.equivariance)
    mats.insert(mats.end(), s.equivariance->module_actions.begin(), s.equivariance->module_actions.end());
  std::vector<Vec> top_rows;
  for (std::size_t i = 0; i < r; ++i) {
    Vec e(r, 0);
    e[i] = 1;
    top_rows.push_back(embed(e));
  }
  HowellBasis top = zk::span_of(l, r, top_rows);
  auto close = [&](HowellBasis b) {
    for (;;) {
      std::vector<Vec> rows = b.rows();
      bool grew = false;
      for (const auto& row : b.rows())
        for (const auto& a : mats) {
          Vec y = embed(apply_matrix(a, unembed(row), inv));
          if (!b.contains(y)) {
            rows.push_back(std::move(y));
            grew = true;
          }
        }
      if (!grew) return b;
      b = zk::span_of(l, r, std::move(rows));
    }
  };
  auto subs = zk::enumerate_submodules(top, HowellBasis(l, r), nullptr, close, limit);
  std::vector<std::vector<Vec>> out;
  for (const auto& b : subs) {
    std::vector<Vec> gens;
    for (const auto& row : b.rows()) gens.push_back(unembed(row));
    out.push_back(std::move(gens));
  }
  return out;
}

IYBStructure conjugate_structure(const IYBStructure& s, u64 g) {
  const Group& grp = s.group();
  u64 gi = grp.inv(g);
  return make_structure(s.module, [&](u64 x) { return s.module.act(gi, s.chi(grp.mul(grp.mul(g, x), gi))); });
}

}  // namespace iyb
