#pragma once

// Exact linear algebra over Z/m.
//
// Submodules of (Z/m)^r are kept in Howell normal form: echelon rows whose
// pivots divide m, entries above each pivot reduced below it, and closed
// under annihilators so that pivot elimination decides membership. The
// form is canonical, so equal submodules compare equal row for row.

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "iyb/arith.hpp"

namespace iyb::zk {

using Vec = std::vector<u64>;

/// Dense matrix over Z/m, entries kept reduced.
class ZkMatrix {
 public:
  ZkMatrix(u64 modulus, std::size_t rows, std::size_t cols);
  ZkMatrix(u64 modulus, std::size_t cols, const std::vector<Vec>& rows);

  u64 modulus() const { return modulus_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  u64 operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, u64 v) { data_[i * cols_ + j] = v % modulus_; }
  Vec row(std::size_t i) const;
  std::vector<Vec> row_list() const;

 private:
  u64 modulus_;
  std::size_t rows_, cols_;
  std::vector<u64> data_;
};

/// Canonical basis of a submodule of (Z/m)^rank.
class HowellBasis {
 public:
  HowellBasis(u64 modulus, std::size_t rank);  // the zero submodule

  u64 modulus() const { return modulus_; }
  std::size_t rank() const { return rank_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool empty() const { return rows_.empty(); }

  /// Canonical representative of v + span. Equal cosets reduce equally.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  /// Coefficients c with v = sum c_i * rows()[i], or nullopt.
  std::optional<Vec> coordinates(const Vec& v) const;
  bool contains_all(const HowellBasis& other) const;

  /// Number of elements of the span.
  Cardinality size() const;

  bool operator==(const HowellBasis&) const = default;

 private:
  friend HowellBasis howell_form(const ZkMatrix&);
  friend HowellBasis span_of(u64, std::size_t, std::vector<Vec>);
  u64 modulus_;
  std::size_t rank_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

HowellBasis howell_form(const ZkMatrix& m);
HowellBasis span_of(u64 modulus, std::size_t rank, std::vector<Vec> rows);
HowellBasis full_module(u64 modulus, std::size_t rank);

HowellBasis sum(const HowellBasis& a, const HowellBasis& b);
HowellBasis intersection(const HowellBasis& a, const HowellBasis& b);
/// Row span of m.
HowellBasis image(const ZkMatrix& m);
/// Left kernel {x : x * m = 0}.
HowellBasis kernel(const ZkMatrix& m);
HowellBasis scale(const HowellBasis& b, u64 factor);

/// [ (Z/m)^r : span ].
Cardinality submodule_index(const HowellBasis& b);
/// [outer : inner]; inner must be contained in outer.
Cardinality relative_index(const HowellBasis& outer, const HowellBasis& inner);

/// The finite abelian group top/sub in invariant-factor coordinates.
///
/// generators()[i] has order invariants()[i], the invariants form a
/// divisibility chain and every element of top is congruent modulo sub
/// to exactly one combination sum c_i * generators()[i], 0 <= c_i < invariants()[i].
class QuotientModule {
 public:
  QuotientModule(HowellBasis top, HowellBasis sub);

  const HowellBasis& top() const { return top_; }
  const HowellBasis& sub() const { return sub_; }
  const std::vector<u64>& invariants() const { return invariants_; }
  const std::vector<Vec>& generators() const { return generators_; }
  std::size_t dimension() const { return invariants_.size(); }
  Cardinality size() const;

  /// Coordinates of v + sub. Throws std::invalid_argument when v is not in top.
  Vec coordinates(const Vec& v) const;
  /// sum c_i * generators()[i] in the ambient module.
  Vec lift(const Vec& coords) const;

 private:
  HowellBasis top_, sub_;
  std::vector<u64> invariants_;
  std::vector<Vec> generators_;
  HowellBasis helper_;  // Howell form of [generators | I] stacked on [sub | 0]
};

/// Writes vectors as combinations of fixed generators modulo a submodule.
class LinearSolver {
 public:
  LinearSolver(std::vector<Vec> gens, const HowellBasis& sub);
  /// c with v = sum c_i gens_i modulo sub, or nullopt when v is outside
  /// span(gens) + sub.
  std::optional<Vec> solve(const Vec& v) const;
  const std::vector<Vec>& generators() const { return gens_; }

 private:
  std::vector<Vec> gens_;
  HowellBasis helper_;
  std::size_t n_;
};

/// Idempotent endomorphism of top/sub with image S/sub and kernel C/sub,
/// where top = S + C and S ∩ C = sub.
class Projection {
 public:
  Projection(const HowellBasis& image, const HowellBasis& kernel, const HowellBasis& sub);
  /// The S-component of v, reduced modulo sub.
  Vec apply(const Vec& v) const;
  const HowellBasis& image() const { return image_; }
  const HowellBasis& kernel() const { return kernel_; }
  const HowellBasis& sub() const { return sub_; }

 private:
  HowellBasis image_, kernel_, sub_;
  LinearSolver solver_;
  std::size_t image_gens_;
};

/// All submodules X with sub <= X <= top, by closing sub under one extra
/// element at a time. `keep` prunes the search (it must be monotone: if it
/// rejects X it rejects everything above X); `close` may enlarge each
/// candidate (for instance to the left ideal it generates).
std::vector<HowellBasis> enumerate_submodules(const HowellBasis& top, const HowellBasis& sub,
                                              const std::function<bool(const HowellBasis&)>& keep,
                                              const std::function<HowellBasis(HowellBasis)>& close,
                                              std::size_t limit);

/// Complement C of S inside top/sub: sub <= C <= top, (S+sub) + C = top and
/// (S+sub) ∩ C = sub. Throws NotASummand when S+sub/sub is not a direct
/// summand of top/sub.
HowellBasis pure_complement(const HowellBasis& s, const HowellBasis& top, const HowellBasis& sub);
/// Complement of S in the full ambient module.
HowellBasis pure_complement(const HowellBasis& s);

/// Index-p submodules H with rad <= H <= J and v not in H, where J/rad is
/// elementary abelian of exponent p. Each hyperplane corresponds to exactly
/// one functional lambda on J/rad with lambda(v) = 1, so there are p^(d-1) of
/// them when v is not in rad and none otherwise.
class HyperplaneStream {
 public:
  HyperplaneStream(const HowellBasis& j, const HowellBasis& rad, const Vec& v);

  u64 prime() const { return p_; }
  std::size_t dimension() const { return quotient_.dimension(); }
  u64 size() const { return count_; }
  HowellBasis at(u64 index) const;
  HowellBasis sample(std::mt19937_64& rng) const;

 private:
  QuotientModule quotient_;
  u64 p_ = 0;
  Vec target_;  // coordinates of v in J/rad
  std::size_t pivot_ = 0;
  u64 count_ = 0;
};

}  // namespace iyb::zk
