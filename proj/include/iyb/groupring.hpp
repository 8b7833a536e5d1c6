#pragma once

// The group ring (Z/m)G with elements as coefficient vectors over the
// group-element basis (coordinate g is the coefficient of g), the
// augmentation ideal filtration and left-ideal helpers.

#include <memory>
#include <mutex>
#include <optional>

#include "iyb/group.hpp"
#include "iyb/matrix.hpp"
#include "iyb/zk.hpp"

namespace iyb {

using zk::HowellBasis;

class GroupRing {
 public:
  /// Ring computations are dense in |G|; max_order bounds the group size.
  GroupRing(Group g, u64 modulus, u64 max_order = 1024);

  const Group& group() const { return group_; }
  u64 modulus() const { return modulus_; }
  std::size_t rank() const { return group_.order(); }

  Vec basis(u64 g) const;
  /// 1 - g
  Vec one_minus(u64 g) const;
  /// g * x
  Vec left_mul(u64 g, const Vec& x) const;
  Vec mul(const Vec& a, const Vec& b) const;
  u64 augmentation(const Vec& x) const;
  /// The ring automorphism induced by a group automorphism p.
  Vec apply_automorphism(const Perm& p, const Vec& x) const;

  /// omega^i for i = 1, 2, 3, computed once and shared.
  const HowellBasis& omega(unsigned i) const;
  /// Smallest left ideal containing b.
  HowellBasis left_closure(const HowellBasis& b) const;
  bool is_left_ideal(const HowellBasis& b) const;
  /// omega * J for a left ideal J.
  HowellBasis omega_times(const HowellBasis& j) const;
  /// p J + omega J. Requires a p-group and m = p^k.
  HowellBasis radical(const HowellBasis& j) const;
  /// Submodule spanned by the given vectors.
  HowellBasis span(std::vector<Vec> rows) const;
  HowellBasis zero() const { return HowellBasis(modulus_, rank()); }
  /// True when b is mapped into itself by the ring automorphisms induced by p.
  bool is_stable(const HowellBasis& b, const std::vector<Perm>& autos) const;

 private:
  struct Layers {
    std::mutex mu;
    std::shared_ptr<HowellBasis> omega[4];
  };
  Group group_;
  u64 modulus_;
  std::shared_ptr<Layers> layers_;  // shared by copies
};

/// Preimage of a left ideal of (Z/m)(G/N) under the projection G -> G/N:
/// lifts of I' plus the kernel {g - rep(gN)}.
HowellBasis left_ideal_preimage(const GroupRing& r, const QuotientGroup& q, const HowellBasis& i_prime);

struct AbelianizationReport {
  bool ok = false;
  u64 size = 0;            // |G/[G,G]|
  u64 omega_quotient = 0;  // |omega/omega^2|
  std::vector<Vec> table;  // coset index -> coordinates of 1 - g in omega/omega^2
  std::string failure;
};
/// Checks that g[G,G] -> 1 - g + omega^2 is an isomorphism G/[G,G] -> omega/omega^2.
AbelianizationReport abelianization_iso_check(const GroupRing& r);

/// {g : 1 - g in omega^i}.
ElementSet dimension_subgroup_probe(const GroupRing& r, unsigned i);

struct SandlingSplit {
  HowellBasis s;  // span{1 - n : n in N'} + omega^3
  HowellBasis c;  // complement: s + c = omega^2, s ∩ c = omega^3
};
/// Requires a p-group of class at most 2 and m = p^k.
SandlingSplit sandling_complement(const GroupRing& r);

/// Residue modulus p^k for a p-group of order p^n with k = n * factor.
u64 default_modulus(const Group& g, unsigned factor = 1);

}  // namespace iyb
