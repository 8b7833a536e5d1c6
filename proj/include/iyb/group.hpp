#pragma once

// Finite groups with indexed elements.
//
// Elements are the integers 0..order-1 and the identity is always 0.
// Structured constructors fix a mixed-radix encoding so that element
// indices (and therefore certificates) are stable:
//
//   cyclic(n), abelian(n1,...,nr)   x = c1 + n1*c2 + n1*n2*c3 + ...
//   dihedral(n)                     r^i s^j          -> i + n*j
//   dicyclic(n)                     x^a y^b          -> a + 2n*b
//   heisenberg(q)                   (n1,n2,n3)       -> n1 + q*n2 + q^2*n3
//   semidirect(N, H)                (n,h)            -> n + |N|*h
//   direct_product(G1, G2)          (a,b)            -> a + |G1|*b
//   symmetric(n)                    lexicographic rank of the image array
//
// Conventions: x^y = y^-1 x y and [a,b] = a^-1 b^-1 a b.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "iyb/arith.hpp"
#include "json.hpp"

namespace iyb {

using Perm = std::vector<u64>;
/// A word in the generators of a group (indices into generators()),
/// evaluated left to right. Only positive letters are used; inverses are
/// written as powers.
using Word = std::vector<std::uint32_t>;
/// A sorted list of element indices.
using ElementSet = std::vector<u64>;

class GroupAction;
struct SemidirectParts;
namespace detail {
struct GroupCore;
}

class Group {
 public:
  static Group cyclic(u64 n);
  static Group abelian(std::vector<u64> orders);
  static Group dihedral(u64 n);  // order 2n
  static Group dicyclic(u64 n);  // order 4n
  static Group quaternion();     // dicyclic(2)
  static Group symmetric(unsigned n);
  static Group heisenberg(u64 q);
  /// table[g][h] = g*h. Validates closure, identity, inverses and
  /// associativity (exhaustively up to order 256, sampled above).
  static Group from_table(std::vector<std::vector<u64>> table);
  static Group semidirect(const GroupAction& act);
  static Group direct_product(const Group& a, const Group& b);
  static Group direct_power(const Group& g, unsigned n);
  static Group trivial() { return cyclic(1); }

  /// The trivial group.
  Group();
  explicit Group(std::shared_ptr<const detail::GroupCore> core) : core_(std::move(core)) {}

  u64 order() const;
  u64 mul(u64 x, u64 y) const;
  u64 inv(u64 x) const;
  u64 pow(u64 x, u64 e) const;
  /// x^y = y^-1 x y
  u64 conj(u64 x, u64 y) const;
  /// [a,b] = a^-1 b^-1 a b
  u64 commutator(u64 a, u64 b) const;
  u64 element_order(u64 x) const;

  const std::vector<u64>& generators() const;
  /// Presentation relators in the generators, when the constructor knows one.
  std::optional<std::vector<Word>> relators() const;
  /// A word in generators() evaluating to x.
  Word factor(u64 x) const;
  u64 evaluate(const Word& w) const;

  std::string name() const;
  /// Self-contained description; group_from_descriptor rebuilds the same
  /// group with the same indexing.
  nlohmann::json descriptor() const;
  std::vector<std::vector<u64>> cayley_table() const;
  /// Non-null when the group was built by semidirect().
  const SemidirectParts* semidirect_parts() const;

  bool same_as(const Group& o) const;

 private:
  void check(u64 x) const;
  std::shared_ptr<const detail::GroupCore> core_;
};

Group group_from_descriptor(const nlohmann::json& d);

/// Parses cyclic:n, abelian:AxBx.., dihedral:n, dicyclic:n, quaternion,
/// symmetric:n, heis:q, table:PATH, sdp:NSPEC:HSPEC:ACTIONPATH,
/// prod:SPEC:SPEC and pow:N:SPEC. Throws ParseError.
Group parse_group_spec(const std::string& spec);
/// Cayley-table file: first line n, then n rows of n indices.
Group read_group_table(const std::string& path);
void write_group_table(const Group& g, const std::string& path);
/// Action file for H acting on N: one line of |N| indices per generator of H.
GroupAction read_action_file(const std::string& path, const Group& h, const Group& n);
void write_action_file(const GroupAction& act, const std::string& path);

/// Automorphism of a group, stored as the full permutation of indices.
class Automorphism {
 public:
  /// Checks that perm is a bijective homomorphism fixing 0 (on every edge
  /// x -> x*s of the Cayley graph, which suffices).
  Automorphism(Group g, Perm perm);
  /// Extends images of the generators along factorization words, then checks.
  static Automorphism from_generator_images(const Group& g, const std::vector<u64>& images);
  static Automorphism identity(const Group& g);

  const Group& group() const { return group_; }
  const Perm& perm() const { return perm_; }
  u64 operator()(u64 x) const { return perm_[x]; }

 private:
  Group group_;
  Perm perm_;
};

/// Left action of `actor` on `target` by automorphisms: ^a g.
class GroupAction {
 public:
  /// images[i] is the automorphism of target induced by actor.generators()[i].
  /// The homomorphism property actor -> Aut(target) is checked on the actor's
  /// relators when present, otherwise on every Cayley edge of the actor.
  GroupAction(Group actor, Group target, std::vector<Perm> images, bool check = true);
  /// Trivial group acting on the trivial group.
  GroupAction() : GroupAction(Group(), Group(), {}, false) {}
  static GroupAction trivial(const Group& actor, const Group& target);
  /// Action of G on itself by conjugation, ^g x = g x g^-1.
  static GroupAction conjugation(const Group& g);

  const Group& actor() const { return actor_; }
  const Group& target() const { return target_; }
  const std::vector<Perm>& generator_images() const { return images_; }

  /// ^a g
  u64 apply(u64 a, u64 g) const;
  /// Full permutation for actor element a.
  Perm perm_of(u64 a) const;

  /// Throws Error with a witness when the data is not a homomorphism
  /// actor -> Aut(target).
  void verify() const;
  /// Same action viewed through a homomorphism B -> actor given by the
  /// images of B's generators.
  GroupAction pull_back(const Group& b, const std::vector<u64>& images) const;

 private:
  Group actor_, target_;
  std::vector<Perm> images_;
  std::shared_ptr<std::vector<Perm>> cache_;  // all perms when small
};

struct SemidirectParts {
  Group n, h;
  GroupAction action;
  u64 embed_n(u64 x) const { return x; }
  u64 embed_h(u64 y) const { return y * n.order(); }
};

// ---------------------------------------------------------------------------
// Subgroups and structural invariants

ElementSet subgroup_generated(const Group& g, const std::vector<u64>& gens);
ElementSet normal_closure(const Group& g, const std::vector<u64>& gens);
bool is_normal(const Group& g, const ElementSet& s);
ElementSet center(const Group& g);
/// [A, B] for normal subgroups given by generators.
ElementSet commutator_subgroup(const Group& g, const std::vector<u64>& a, const std::vector<u64>& b);
ElementSet derived_subgroup(const Group& g);

struct StructuralInvariants {
  ElementSet center;
  ElementSet derived;
  std::vector<ElementSet> lower_central_series;  // G, [G,G], [[G,G],G], ...
  std::optional<unsigned> nilpotency_class;      // nullopt: not nilpotent
  std::map<u64, u64> element_orders;             // order -> count
};
StructuralInvariants structural_invariants(const Group& g);
/// Nilpotency class, or nullopt when the lower central series stalls.
std::optional<unsigned> nilpotency_class(const Group& g);

/// The unique square root of x inside <x>, for x of odd order.
u64 sqrt_odd(const Group& g, u64 x);

/// Group tables of G/N with projection and a transversal.
struct QuotientGroup {
  Group group;
  std::vector<u64> projection;  // element of G -> coset index
  std::vector<u64> reps;        // coset index -> smallest element of the coset
};
QuotientGroup quotient_group(const Group& g, const ElementSet& normal);

/// Fingerprint for distinguishing small groups: order statistics of
/// elements, center, derived subgroup, squares and commuting pairs.
std::string group_fingerprint(const Group& g);

/// The action of A wr S_n on G^n:
/// ((a_1..a_n), sigma) . (x_1..x_n) = (a_1 x_{sigma^-1(1)}, ..., a_n x_{sigma^-1(n)}).
/// Returns the wreath product A wr S_n as a semidirect product together
/// with its action on G^n (indexed as direct_power(G, n)).
struct WreathData {
  Group power;      // G^n
  Group wreath;     // A^n x| S_n
  GroupAction action;
};
WreathData direct_power_with_wreath(const GroupAction& a_on_g, unsigned n);

/// Permutation sigma of {0..n-1} for an element of symmetric(n).
std::vector<unsigned> symmetric_unrank(unsigned n, u64 index);
u64 symmetric_rank(const std::vector<unsigned>& perm);

}  // namespace iyb
