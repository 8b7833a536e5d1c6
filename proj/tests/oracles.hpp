#pragma once

// Brute-force reference implementations used only by the tests. They work
// on explicit element sets and never touch the Howell machinery.

#include <set>
#include <vector>

#include "iyb/arith.hpp"

namespace iyb::oracle {

using Vec = std::vector<u64>;
using ElementSet = std::set<Vec>;

inline Vec add(const Vec& a, const Vec& b, u64 m) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % m;
  return r;
}

/// Additive closure of gens in (Z/m)^rank.
inline ElementSet enumerate_span(u64 m, std::size_t rank, const std::vector<Vec>& gens) {
  ElementSet seen{Vec(rank, 0)};
  std::vector<Vec> frontier{Vec(rank, 0)};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        Vec y = add(x, g, m);
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

/// Every vector of (Z/m)^rank.
inline std::vector<Vec> all_vectors(u64 m, std::size_t rank) {
  std::vector<Vec> out;
  Vec v(rank, 0);
  for (;;) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < rank && ++v[i] == m) v[i++] = 0;
    if (i == rank) break;
  }
  return out;
}

/// All subgroups of (Z/m)^rank that are generated by at most two elements.
/// For rank <= 2 that is every subgroup.
inline std::set<ElementSet> all_two_generated_subgroups(u64 m, std::size_t rank) {
  auto vecs = all_vectors(m, rank);
  std::set<ElementSet> out;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i; j < vecs.size(); ++j) out.insert(enumerate_span(m, rank, {vecs[i], vecs[j]}));
  return out;
}

inline ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  for (const auto& x : a)
    if (b.count(x)) out.insert(x);
  return out;
}

/// Brute-force isomorphism test for small groups: tries every assignment of
/// G's generators to elements of H, extends along words and checks the
/// multiplication table.
template <class G>
bool isomorphic(const G& g, const G& h) {
  if (g.order() != h.order()) return false;
  const auto& gens = g.generators();
  std::vector<u64> images(gens.size(), 0);
  const u64 n = h.order();
  for (;;) {
    std::vector<u64> map(n);
    for (u64 x = 0; x < n; ++x) {
      u64 r = 0;
      for (auto letter : g.factor(x)) r = h.mul(r, images[letter]);
      map[x] = r;
    }
    std::set<u64> distinct(map.begin(), map.end());
    bool ok = distinct.size() == n;
    for (u64 x = 0; ok && x < n; ++x)
      for (u64 y = 0; ok && y < n; ++y) ok = map[g.mul(x, y)] == h.mul(map[x], map[y]);
    if (ok) return true;
    std::size_t i = 0;
    while (i < images.size() && ++images[i] == n) images[i++] = 0;
    if (i == images.size()) return false;
  }
}

}  // namespace iyb::oracle
