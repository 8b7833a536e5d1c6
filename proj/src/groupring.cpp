#include "iyb/groupring.hpp"

#include <set>

#include "iyb/error.hpp"

namespace iyb {

GroupRing::GroupRing(Group g, u64 modulus, u64 max_order) : group_(std::move(g)), modulus_(modulus), layers_(std::make_shared<Layers>()) {
  if (modulus < 2) throw Error("group ring modulus must be >= 2");
  if (group_.order() > max_order)
    throw ResourceLimit("group ring of a group of order " + std::to_string(group_.order()) + " exceeds the bound " +
                        std::to_string(max_order));
}

Vec GroupRing::basis(u64 g) const {
  Vec v(rank(), 0);
  v.at(g) = 1 % modulus_;
  return v;
}

Vec GroupRing::one_minus(u64 g) const {
  Vec v(rank(), 0);
  if (g == 0) return v;
  v[0] = 1;
  v.at(g) = modulus_ - 1;
  return v;
}

Vec GroupRing::left_mul(u64 g, const Vec& x) const {
  Vec y(rank(), 0);
  for (u64 h = 0; h < rank(); ++h)
    if (x[h] != 0) y[group_.mul(g, h)] = x[h];
  return y;
}

Vec GroupRing::mul(const Vec& a, const Vec& b) const {
  Vec y(rank(), 0);
  for (u64 g = 0; g < rank(); ++g) {
    if (a[g] == 0) continue;
    for (u64 h = 0; h < rank(); ++h)
      if (b[h] != 0) {
        u64 gh = group_.mul(g, h);
        y[gh] = addmod(y[gh], mulmod(a[g], b[h], modulus_), modulus_);
      }
  }
  return y;
}

u64 GroupRing::augmentation(const Vec& x) const {
  u64 s = 0;
  for (u64 c : x) s = addmod(s, c % modulus_, modulus_);
  return s;
}

Vec GroupRing::apply_automorphism(const Perm& p, const Vec& x) const {
  Vec y(rank(), 0);
  for (u64 h = 0; h < rank(); ++h) y[p[h]] = x[h];
  return y;
}

HowellBasis GroupRing::span(std::vector<Vec> rows) const { return zk::span_of(modulus_, rank(), std::move(rows)); }

HowellBasis GroupRing::left_closure(const HowellBasis& b) const {
  HowellBasis cur = b;
  for (;;) {
    std::vector<Vec> rows = cur.rows();
    bool grew = false;
    for (const auto& r : cur.rows())
      for (u64 s : group_.generators()) {
        Vec y = left_mul(s, r);
        if (!cur.contains(y)) {
          rows.push_back(std::move(y));
          grew = true;
        }
      }
    if (!grew) return cur;
    cur = span(std::move(rows));
  }
}

bool GroupRing::is_left_ideal(const HowellBasis& b) const {
  for (const auto& r : b.rows())
    for (u64 s : group_.generators())
      if (!b.contains(left_mul(s, r))) return false;
  return true;
}

bool GroupRing::is_stable(const HowellBasis& b, const std::vector<Perm>& autos) const {
  for (const auto& p : autos)
    for (const auto& r : b.rows())
      if (!b.contains(apply_automorphism(p, r))) return false;
  return true;
}

HowellBasis GroupRing::omega_times(const HowellBasis& j) const {
  std::vector<Vec> rows;
  for (const auto& r : j.rows())
    for (u64 s : group_.generators()) {
      Vec y = left_mul(s, r);
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = submod(r[i], y[i], modulus_);  // (1 - s) r
      rows.push_back(std::move(y));
    }
  return left_closure(span(std::move(rows)));
}

HowellBasis GroupRing::radical(const HowellBasis& j) const {
  u64 p = prime_power_base(group_.order());
  if (group_.order() == 1) p = prime_power_base(modulus_);
  if (p == 0 || prime_power_base(modulus_) != p) throw Error("radical_of needs a p-group and modulus p^k");
  HowellBasis pj = zk::scale(j, p);
  return zk::sum(pj, omega_times(j));
}

const HowellBasis& GroupRing::omega(unsigned i) const {
  if (i < 1 || i > 3) throw Error("omega power must be 1, 2 or 3");
  std::lock_guard<std::mutex> lock(layers_->mu);
  auto& omega_ = layers_->omega;
  if (!omega_[1]) {
    std::vector<Vec> rows;
    for (u64 g = 1; g < rank(); ++g) rows.push_back(one_minus(g));
    omega_[1] = std::make_shared<HowellBasis>(span(std::move(rows)));
  }
  for (unsigned k = 2; k <= i; ++k)
    if (!omega_[k]) omega_[k] = std::make_shared<HowellBasis>(omega_times(*omega_[k - 1]));
  return *omega_[i];
}

HowellBasis left_ideal_preimage(const GroupRing& r, const QuotientGroup& q, const HowellBasis& i_prime) {
  const u64 n = r.rank();
  if (q.projection.size() != n) throw Error("left_ideal_preimage: quotient does not match the ring's group");
  if (i_prime.rank() != q.group.order() || i_prime.modulus() != r.modulus())
    throw Error("left_ideal_preimage: ideal lives in a different ring");
  std::vector<Vec> rows;
  for (const auto& b : i_prime.rows()) {
    Vec v(n, 0);
    for (u64 c = 0; c < b.size(); ++c) v[q.reps[c]] = b[c];
    rows.push_back(std::move(v));
  }
  for (u64 g = 0; g < n; ++g) {
    u64 rep = q.reps[q.projection[g]];
    if (rep == g) continue;
    Vec v(n, 0);
    v[g] = 1;
    v[rep] = r.modulus() - 1;
    rows.push_back(std::move(v));
  }
  return r.span(std::move(rows));
}

AbelianizationReport abelianization_iso_check(const GroupRing& r) {
  AbelianizationReport rep;
  const Group& g = r.group();
  ElementSet d = derived_subgroup(g);
  QuotientGroup ab = quotient_group(g, d);
  rep.size = ab.group.order();
  zk::QuotientModule quot(r.omega(1), r.omega(2));
  rep.omega_quotient = quot.size().to_u64();
  std::vector<Vec> coords(g.order());
  for (u64 x = 0; x < g.order(); ++x) coords[x] = quot.coordinates(r.one_minus(x));
  auto add = [&](const Vec& a, const Vec& b) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % quot.invariants()[i];
    return c;
  };
  // constant on cosets
  for (u64 x = 0; x < g.order(); ++x)
    if (coords[x] != coords[ab.reps[ab.projection[x]]]) {
      rep.failure = "1 - g is not constant on the coset of element " + std::to_string(x);
      return rep;
    }
  // additive: 1 - gh = (1 - g) + (1 - h) mod omega^2
  for (u64 a = 0; a < ab.reps.size(); ++a)
    for (u64 b = 0; b < ab.reps.size(); ++b) {
      u64 x = ab.reps[a], y = ab.reps[b];
      if (coords[g.mul(x, y)] != add(coords[x], coords[y])) {
        rep.failure = "not additive on cosets " + std::to_string(a) + ", " + std::to_string(b);
        return rep;
      }
    }
  std::set<Vec> distinct;
  for (u64 rep_g : ab.reps) {
    distinct.insert(coords[rep_g]);
    rep.table.push_back(coords[rep_g]);
  }
  if (distinct.size() != ab.reps.size()) {
    rep.failure = "two cosets map to the same class";
    return rep;
  }
  if (rep.omega_quotient != rep.size) {
    rep.failure = "|omega/omega^2| = " + std::to_string(rep.omega_quotient) + " differs from |G/[G,G]| = " +
                  std::to_string(rep.size);
    return rep;
  }
  rep.ok = true;
  return rep;
}

ElementSet dimension_subgroup_probe(const GroupRing& r, unsigned i) {
  const HowellBasis& w = r.omega(i);
  ElementSet out;
  for (u64 g = 0; g < r.rank(); ++g)
    if (w.contains(r.one_minus(g))) out.push_back(g);
  return out;
}

SandlingSplit sandling_complement(const GroupRing& r) {
  const Group& g = r.group();
  u64 p = prime_power_base(g.order());
  if (g.order() > 1 && (p == 0 || prime_power_base(r.modulus()) != p))
    throw ConstructionError("sandling_complement: needs a p-group and modulus p^k");
  auto cls = nilpotency_class(g);
  if (!cls || *cls > 2) throw ConstructionError("sandling_complement: group is not of class at most 2");
  const HowellBasis& w2 = r.omega(2);
  const HowellBasis& w3 = r.omega(3);
  ElementSet d = derived_subgroup(g);
  std::vector<Vec> rows = w3.rows();
  for (u64 n : d) rows.push_back(r.one_minus(n));
  HowellBasis s = r.span(std::move(rows));
  if (!w2.contains_all(s)) throw ConstructionError("sandling_complement: 1 - N' is not inside omega^2");
  // The set {1 - n + omega^3} must already be the whole subgroup S/omega^3.
  std::set<Vec> classes;
  for (u64 n : d) classes.insert(w3.reduce(r.one_minus(n)));
  if (Cardinality::of(classes.size()) * w3.size() != s.size())
    throw ConstructionError("sandling_complement: 1 - N' + omega^3 is not a subgroup");
  HowellBasis c = zk::pure_complement(s, w2, w3);
  return {s, c};
}

u64 default_modulus(const Group& g, unsigned factor) {
  u64 p = prime_power_base(g.order());
  if (p == 0) throw Error("default_modulus: group order is not a prime power");
  u64 n = 0;
  for (u64 x = g.order(); x > 1; x /= p) ++n;
  u64 m = 1;
  for (u64 i = 0; i < n * factor; ++i) {
    if (m > (u64{1} << 62) / p) throw ResourceLimit("modulus too large");
    m *= p;
  }
  return m;
}

}  // namespace iyb
