#include "iyb/constructors.hpp"

#include <numeric>
#include <random>

#include "iyb/error.hpp"

namespace iyb {

namespace {

Matrix block_diag(const Matrix& a, const Matrix& b) {
  std::size_t ra = a.size(), rb = b.size();
  Matrix m(ra + rb, Vec(ra + rb, 0));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ra; ++j) m[i][j] = a[i][j];
  for (std::size_t i = 0; i < rb; ++i)
    for (std::size_t j = 0; j < rb; ++j) m[ra + i][ra + j] = b[i][j];
  return m;
}

std::vector<u64> concat(std::vector<u64> a, const std::vector<u64>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Vec concat_vec(Vec a, const Vec& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

void require_verified(const IYBStructure& s, const std::string& who, const VerifyOptions& opt) {
  Report r = verify_structure(s, opt);
  if (!r.ok) throw ConstructionError(who + ": output failed verification: " + r.summary());
}

IYBStructure forget_equivariance(IYBStructure s) {
  s.equivariance.reset();
  return s;
}

IYBStructure restrict_equivariance(const IYBStructure& s, const Group& b, const std::vector<u64>& images) {
  if (!s.equivariance) throw ConstructionError("restrict_equivariance: structure is not equivariant");
  const auto& eq = *s.equivariance;
  GroupAction act = eq.action.pull_back(b, images);
  std::vector<Matrix> mats;
  for (u64 a : images) mats.push_back(element_matrix(eq.action.actor(), eq.module_actions, s.module.invariants(), a));
  IYBStructure out = s;
  out.equivariance = Equivariance{std::move(act), std::move(mats)};
  return out;
}

// ---------------------------------------------------------------------------

IYBStructure combine_semidirect(const IYBStructure& s_h, const IYBStructure& s_n, const GroupAction& act) {
  const Group& h = act.actor();
  const Group& n = act.target();
  if (!s_h.group().same_as(h) || !s_n.group().same_as(n))
    throw ConstructionError("combine_semidirect: structures live on different groups than the action");
  if (h.order() == 1) return forget_equivariance(s_n);
  if (!s_n.equivariance || !s_n.equivariance->action.actor().same_as(h) ||
      s_n.equivariance->action.generator_images() != act.generator_images())
    throw ConstructionError("combine_semidirect: N-structure is not equivariant under the given action");

  Group g = Group::semidirect(act);
  const auto& inv_n = s_n.module.invariants();
  const auto& inv_h = s_h.module.invariants();
  std::vector<Matrix> mats;
  for (u64 x : g.generators()) {
    u64 xn = x % n.order(), xh = x / n.order();
    Matrix on_n = multiply_matrices(s_n.module.action_of(xn), s_n.equivariance_matrix(xh), inv_n);
    mats.push_back(block_diag(on_n, s_h.module.action_of(xh)));
  }
  GModule m(g, concat(inv_n, inv_h), std::move(mats));
  IYBStructure out = make_structure(std::move(m), [&](u64 x) {
    return concat_vec(s_n.chi(x % n.order()), s_h.chi(x / n.order()));
  });
  require_verified(out, "combine_semidirect");
  return out;
}

// ---------------------------------------------------------------------------

HallSplit hall_decompose(const IYBStructure& s) {
  const Group& g = s.group();
  const SemidirectParts* parts = g.semidirect_parts();
  if (!parts) throw ConstructionError("hall_decompose: group was not built as a semidirect product");
  const Group& n = parts->n;
  const Group& h = parts->h;
  if (std::gcd(n.order(), h.order()) != 1) throw ConstructionError("hall_decompose: N is not a Hall subgroup");
  const auto& inv = s.module.invariants();
  const std::size_t r = inv.size();

  // Z/m_i = Z/a_i + Z/b_i with a_i the |N|-part of m_i.
  std::vector<u64> a(r), b(r), e(r);  // e_i: idempotent of the a-part mod m_i
  for (std::size_t i = 0; i < r; ++i) {
    u64 m = inv[i], ai = 1;
    for (auto [p, k] : factorize(m))
      if (n.order() % p == 0)
        for (u64 t = 0; t < k; ++t) ai *= p;
    a[i] = ai;
    b[i] = m / ai;
    if (ai == 1) e[i] = 0;
    else if (b[i] == 1) e[i] = 1 % m;
    else e[i] = mulmod(b[i], invmod(b[i] % ai, ai), m);  // 1 mod a, 0 mod b
  }
  std::vector<std::size_t> idx_n, idx_h;
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i] > 1) idx_n.push_back(i);
    if (b[i] > 1) idx_h.push_back(i);
  }
  auto part = [&](bool n_part) {
    const auto& idx = n_part ? idx_n : idx_h;
    const auto& mod = n_part ? a : b;
    std::vector<u64> out;
    for (auto i : idx) out.push_back(mod[i]);
    (void)idx;
    return std::make_pair(idx, out);
  };
  auto [pn_idx, inv_n] = part(true);
  auto [ph_idx, inv_h] = part(false);
  auto project = [&](const Vec& x, bool n_part) {
    const auto& idx = n_part ? idx_n : idx_h;
    const auto& mod = n_part ? a : b;
    Vec y;
    for (auto i : idx) y.push_back(x[i] % mod[i]);
    return y;
  };
  auto embed = [&](const Vec& y, bool n_part) {
    const auto& idx = n_part ? idx_n : idx_h;
    Vec x(r, 0);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      std::size_t i = idx[t];
      u64 ei = n_part ? e[i] : submod(1 % inv[i], e[i], inv[i]);
      x[i] = mulmod(y[t], ei, inv[i]);
    }
    return x;
  };
  auto restrict_matrix = [&](const Matrix& mat, bool n_part) {
    const std::size_t d = (n_part ? idx_n : idx_h).size();
    Matrix out(d, Vec(d, 0));
    for (std::size_t j = 0; j < d; ++j) {
      Vec unit(d, 0);
      unit[j] = 1;
      Vec col = project(apply_matrix(mat, embed(unit, n_part), inv), n_part);
      for (std::size_t i = 0; i < d; ++i) out[i][j] = col[i];
    }
    return out;
  };

  // Find g with chi^-1(M_H) = g H g^-1.
  std::vector<char> in_pre(g.order(), 0);
  u64 pre_count = 0;
  for (u64 x = 0; x < g.order(); ++x) {
    Vec pn = project(s.chi(x), true);
    bool zero = std::all_of(pn.begin(), pn.end(), [](u64 v) { return v == 0; });
    in_pre[x] = zero;
    pre_count += zero;
  }
  if (pre_count != h.order()) throw ConstructionError("hall_decompose: chi^-1(M_H) does not have order |H|");
  std::optional<u64> found;
  for (u64 c = 0; c < g.order() && !found; ++c) {
    u64 ci = g.inv(c);
    bool ok = true;
    for (u64 y = 0; y < h.order() && ok; ++y) ok = in_pre[g.mul(g.mul(c, parts->embed_h(y)), ci)];
    if (ok) found = c;
  }
  if (!found) throw ConstructionError("hall_decompose: no conjugate of H is the preimage of M_H");

  IYBStructure t = *found == 0 ? s : conjugate_structure(s, *found);
  for (u64 x = 0; x < n.order(); ++x) {
    Vec ph = project(t.chi(parts->embed_n(x)), false);
    if (!std::all_of(ph.begin(), ph.end(), [](u64 v) { return v == 0; }))
      throw ConstructionError("hall_decompose: chi^-1(M_N) differs from N");
  }
  for (u64 y : n.generators()) {
    Matrix on_h = restrict_matrix(s.module.action_of(parts->embed_n(y)), false);
    if (!(on_h == reduce_matrix(identity_matrix(inv_h.size()), inv_h)))
      throw ConstructionError("hall_decompose: N does not act trivially on M_H");
  }

  std::vector<Matrix> mh, mn, eqm;
  for (u64 y : h.generators()) mh.push_back(restrict_matrix(s.module.action_of(parts->embed_h(y)), false));
  for (u64 x : n.generators()) mn.push_back(restrict_matrix(s.module.action_of(parts->embed_n(x)), true));
  for (u64 y : h.generators()) eqm.push_back(restrict_matrix(s.module.action_of(parts->embed_h(y)), true));

  HallSplit out{*found,
                make_structure(GModule(h, inv_h, std::move(mh)),
                               [&](u64 y) { return project(t.chi(parts->embed_h(y)), false); }),
                make_structure(GModule(n, inv_n, std::move(mn)), [&](u64 x) { return project(t.chi(parts->embed_n(x)), true); },
                               Equivariance{parts->action, std::move(eqm)})};
  require_verified(out.s_h, "hall_decompose (H part)");
  require_verified(out.s_n, "hall_decompose (N part)");
  return out;
}

// ---------------------------------------------------------------------------

IYBStructure power_wreath(const IYBStructure& s, unsigned n, const Group* b, const std::vector<u64>* b_images) {
  if (!s.equivariance) throw ConstructionError("power_wreath: structure must be equivariant");
  if (n < 1) throw ConstructionError("power_wreath: n must be >= 1");
  const Group& g = s.group();
  const auto& eq = *s.equivariance;
  const Group& a = eq.action.actor();
  WreathData w = direct_power_with_wreath(eq.action, n);
  const auto& inv1 = s.module.invariants();
  const std::size_t r = inv1.size();
  std::vector<u64> inv;
  for (unsigned i = 0; i < n; ++i) inv = concat(inv, inv1);

  auto digits = [&](u64 x, u64 base) {
    std::vector<u64> d(n);
    for (unsigned i = 0; i < n; ++i) {
      d[i] = x % base;
      x /= base;
    }
    return d;
  };
  auto place = [&](Matrix& big, const Matrix& small, unsigned row_block, unsigned col_block) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) big[row_block * r + i][col_block * r + j] = small[i][j];
  };

  std::vector<Matrix> mats;
  for (u64 x : w.power.generators()) {
    auto d = digits(x, g.order());
    Matrix m(n * r, Vec(n * r, 0));
    for (unsigned i = 0; i < n; ++i) place(m, s.module.action_of(d[i]), i, i);
    mats.push_back(std::move(m));
  }
  // Wreath generators: A^n copy by copy, then S_n.
  std::vector<Matrix> wmats;
  const Matrix id = reduce_matrix(identity_matrix(r), inv1);
  for (unsigned copy = 0; copy < n; ++copy)
    for (std::size_t i = 0; i < a.generators().size(); ++i) {
      Matrix m(n * r, Vec(n * r, 0));
      for (unsigned c = 0; c < n; ++c) place(m, c == copy ? eq.module_actions[i] : id, c, c);
      wmats.push_back(std::move(m));
    }
  Group sn = Group::symmetric(n);
  for (u64 sgen : sn.generators()) {
    auto sigma = symmetric_unrank(n, sgen);
    Matrix m(n * r, Vec(n * r, 0));
    for (unsigned j = 0; j < n; ++j) place(m, id, sigma[j], j);
    wmats.push_back(std::move(m));
  }
  std::optional<Equivariance> out_eq;
  if (b) {
    if (!b_images) throw ConstructionError("power_wreath: images of B's generators are required");
    GroupAction act = w.action.pull_back(*b, *b_images);
    std::vector<Matrix> bm;
    for (u64 y : *b_images) bm.push_back(element_matrix(w.wreath, wmats, inv, y));
    out_eq = Equivariance{std::move(act), std::move(bm)};
  } else {
    out_eq = Equivariance{w.action, std::move(wmats)};
  }
  GModule m(w.power, inv, std::move(mats));
  IYBStructure out = make_structure(
      std::move(m),
      [&](u64 x) {
        Vec v;
        for (u64 c : digits(x, g.order())) v = concat_vec(std::move(v), s.chi(c));
        return v;
      },
      std::move(out_eq));
  require_verified(out, "power_wreath");
  return out;
}

// ---------------------------------------------------------------------------

u64 class2_add(const Group& n, u64 x, u64 y) { return n.mul(n.mul(x, y), sqrt_odd(n, n.commutator(y, x))); }

IYBStructure class2_odd(const Group& n, const GroupAction* action) {
  const u64 order = n.order();
  if (order % 2 == 0) throw ConstructionError("class2_odd: group order must be odd");
  auto cls = nilpotency_class(n);
  if (!cls || *cls > 2) throw ConstructionError("class2_odd: group must be nilpotent of class at most 2");
  if (order > (u64{1} << 16)) throw ResourceLimit("class2_odd: group too large");
  if (action && !action->target().same_as(n)) throw ConstructionError("class2_odd: action on a different group");

  // Spot check that + is associative and commutative.
  std::mt19937_64 rng(order);
  for (int t = 0; t < 2000 && order > 1; ++t) {
    u64 x = rng() % order, y = rng() % order, z = rng() % order;
    if (class2_add(n, x, y) != class2_add(n, y, x))
      throw ConstructionError("class2_odd: addition is not commutative at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    if (class2_add(n, class2_add(n, x, y), z) != class2_add(n, x, class2_add(n, y, z)))
      throw ConstructionError("class2_odd: addition is not associative at (" + std::to_string(x) + ", " +
                              std::to_string(y) + ", " + std::to_string(z) + ")");
  }

  // Greedy generating set of (N,+) and a spanning tree of its Cayley graph.
  std::vector<u64> gens;
  std::vector<u64> parent(order, ~u64{0}), via(order, 0);
  parent[0] = 0;
  std::vector<u64> tree{0};
  for (u64 x = 1; x < order; ++x) {
    if (parent[x] != ~u64{0}) continue;
    gens.push_back(x);
    // extend the spanned set with the new generator
    for (std::size_t head = 0; head < tree.size(); ++head) {
      u64 y = tree[head];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        u64 z = class2_add(n, y, gens[i]);
        if (parent[z] == ~u64{0}) {
          parent[z] = y;
          via[z] = i;
          tree.push_back(z);
        }
      }
    }
  }
  const std::size_t k = gens.size();
  u64 l = 1;
  for (u64 s : gens) l = std::lcm(l, n.element_order(s));  // additive and multiplicative orders agree
  if (order == 1) l = 2;
  std::vector<Vec> c(order);
  c[0] = Vec(k, 0);
  for (std::size_t i = 1; i < tree.size(); ++i) {
    u64 z = tree[i];
    c[z] = c[parent[z]];
    c[z][via[z]] = addmod(c[z][via[z]], 1, l);
  }
  std::vector<Vec> rel;
  for (u64 x = 0; x < order; ++x)
    for (std::size_t i = 0; i < k; ++i) {
      u64 z = class2_add(n, x, gens[i]);
      if (parent[z] == x && via[z] == i) continue;
      Vec v = c[x];
      v[i] = addmod(v[i], 1, l);
      for (std::size_t j = 0; j < k; ++j) v[j] = submod(v[j], c[z][j], l);
      rel.push_back(std::move(v));
    }
  zk::QuotientModule q(zk::full_module(l, k), zk::span_of(l, k, std::move(rel)));
  const auto& inv = q.invariants();
  std::vector<Vec> coords(order);
  std::vector<u64> element_of(order, ~u64{0});
  for (u64 x = 0; x < order; ++x) {
    coords[x] = q.coordinates(c[x]);
    u64 code = encode_vector(coords[x], inv);
    if (code >= order || element_of[code] != ~u64{0})
      throw ConstructionError("class2_odd: coordinates of (N,+) are not bijective");
    element_of[code] = x;
  }
  std::vector<u64> basis;  // element with coordinates e_j
  for (std::size_t j = 0; j < inv.size(); ++j) {
    Vec e(inv.size(), 0);
    e[j] = 1;
    basis.push_back(element_of[encode_vector(e, inv)]);
  }
  auto matrix_of = [&](auto&& f) {
    Matrix m(inv.size(), Vec(inv.size(), 0));
    for (std::size_t j = 0; j < inv.size(); ++j) {
      const Vec& col = coords[f(basis[j])];
      for (std::size_t i = 0; i < inv.size(); ++i) m[i][j] = col[i];
    }
    return m;
  };
  std::vector<Matrix> mats;
  for (u64 t : n.generators())
    mats.push_back(matrix_of([&](u64 y) { return class2_add(n, n.mul(t, y), n.inv(t)); }));
  std::optional<Equivariance> eq;
  if (action) {
    std::vector<Matrix> am;
    for (const auto& p : action->generator_images()) am.push_back(matrix_of([&](u64 y) { return p[y]; }));
    eq = Equivariance{*action, std::move(am)};
  }
  IYBStructure out = make_structure(GModule(n, inv, std::move(mats)), [&](u64 x) { return coords[x]; }, std::move(eq));
  require_verified(out, "class2_odd");
  return out;
}

// ---------------------------------------------------------------------------

SandlingResult class2_equivariant_sandling(const GroupAction& h_on_n, unsigned k_factor) {
  const Group& n = h_on_n.target();
  const Group& h = h_on_n.actor();
  u64 p = prime_power_base(n.order());
  if (n.order() > 1 && p == 0) throw ConstructionError("sandling: N must be a p-group");
  if (n.order() == 1) p = 2;
  if (h.order() % p == 0) throw ConstructionError("sandling: |H| must be coprime to p");
  auto cls = nilpotency_class(n);
  if (!cls || *cls > 2) throw ConstructionError("sandling: N must have class at most 2");
  u64 mod = n.order() == 1 ? 2 : default_modulus(n, k_factor);
  GroupRing r(n, mod);

  SandlingSplit split = sandling_complement(r);
  const HowellBasis& w2 = r.omega(2);
  const HowellBasis& w3 = r.omega(3);
  zk::Projection pi(split.s, split.c, w3);

  std::vector<Perm> perms(h.order()), inv_perms(h.order());
  for (u64 y = 0; y < h.order(); ++y) perms[y] = h_on_n.perm_of(y);
  for (u64 y = 0; y < h.order(); ++y) inv_perms[y] = perms[h.inv(y)];
  const u64 h_inv = invmod(h.order() % mod, mod);
  auto pi_hat = [&](const Vec& x) {
    Vec acc(r.rank(), 0);
    for (u64 y = 0; y < h.order(); ++y) {
      Vec t = r.apply_automorphism(inv_perms[y], pi.apply(r.apply_automorphism(perms[y], x)));
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = addmod(acc[i], t[i], mod);
    }
    for (auto& v : acc) v = mulmod(v, h_inv, mod);
    return acc;
  };
  std::vector<Vec> rows = w3.rows();
  for (const auto& x : w2.rows()) {
    Vec px = pi_hat(x);
    Vec d(x.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = submod(x[i], px[i], mod);
    rows.push_back(std::move(d));
  }
  HowellBasis ideal = r.span(std::move(rows));

  if (!r.is_stable(ideal, h_on_n.generator_images())) throw ConstructionError("sandling: ideal is not H-stable");
  if (!r.is_left_ideal(ideal)) throw ConstructionError("sandling: ideal is not a left ideal");
  TransversalReport tr = verify_transversal(r, ideal, n.order() <= 512);
  if (!tr.ok) throw ConstructionError("sandling: transversal check failed: " + tr.witness);
  IYBStructure s = ideal_to_structure(r, ideal, &h_on_n);
  require_verified(s, "class2_equivariant_sandling");
  return SandlingResult{std::move(r), std::move(ideal), std::move(tr), std::move(s)};
}

// ---------------------------------------------------------------------------

IYBStructure hertweck_d_structure(const HertweckGroups& h, bool allow_any_odd_q) {
  const u64 q = h.q;
  if (!h.q_is_1_mod_4 && !allow_any_odd_q)
    throw ConstructionError("hertweck-d needs q = 1 mod 4 (q = " + std::to_string(q) + "); override with --allow-any-odd-q");
  const u64 half = (q + 1) / 2;
  auto acts = hertweck_d_action(q);
  GModule m(h.d, {q, q, q}, {acts[0], acts[1], acts[2]});
  std::vector<Matrix> am;
  for (u64 a : h.a.generators()) am.push_back(delta_module(h, a));
  IYBStructure s = make_structure(
      std::move(m),
      [&](u64 x) {
        auto [n1, n2, n3] = heis_coords(q, x);
        u64 prod = mulmod(mulmod(n1, n2, q), half, q);
        return Vec{submod(n3, prod, q), negmod(mulmod(n2, half, q), q), mulmod(n1, half, q)};
      },
      Equivariance{h.action, std::move(am)});
  return s;
}

u64 hertweck_chi_inverse(u64 q, const Vec& m) {
  u64 n1 = mulmod(2, m[2], q);
  u64 n2 = negmod(mulmod(2, m[1], q), q);
  u64 n3 = addmod(m[0], mulmod(mulmod(n1, n2, q), (q + 1) / 2, q), q);
  return heis_index(q, n1, n2, n3);
}

}  // namespace iyb
