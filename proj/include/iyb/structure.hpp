#pragma once

// IYB structures: a G-module M, a bijective 1-cocycle chi: G -> M with
// chi(gh) = chi(g) + g chi(h), and optionally a group A acting on both G
// and M with chi(^a g) = a chi(g).

#include <memory>
#include <optional>
#include <string>

#include "iyb/group.hpp"
#include "iyb/groupring.hpp"
#include "iyb/matrix.hpp"

namespace iyb {

/// Z/m_1 + ... + Z/m_r with a left action of G, one matrix per generator.
class GModule {
 public:
  /// The zero module of the trivial group.
  GModule();
  /// Checks shapes and that each matrix respects the invariants; the
  /// homomorphism property is left to verify_module.
  GModule(Group g, std::vector<u64> invariants, std::vector<Matrix> generator_actions);
  /// Trivial action.
  static GModule trivial(Group g, std::vector<u64> invariants);

  const Group& group() const { return group_; }
  const std::vector<u64>& invariants() const { return invariants_; }
  const std::vector<Matrix>& generator_actions() const { return actions_; }
  std::size_t rank() const { return invariants_.size(); }
  Cardinality size() const;

  /// Matrix of g. Every element's matrix is cached for groups up to 2^16.
  Matrix action_of(u64 g) const;
  Vec act(u64 g, const Vec& x) const;
  Vec act_generator(std::size_t i, const Vec& x) const { return apply_matrix(actions_[i], x, invariants_); }

  Vec zero() const { return Vec(rank(), 0); }
  Vec add(const Vec& a, const Vec& b) const { return add_vectors(a, b, invariants_); }
  Vec sub(const Vec& a, const Vec& b) const { return sub_vectors(a, b, invariants_); }
  Vec neg(const Vec& a) const { return neg_vector(a, invariants_); }
  bool is_reduced(const Vec& x) const;

 private:
  struct Cache;
  Group group_;
  std::vector<u64> invariants_;
  std::vector<Matrix> actions_;
  std::shared_ptr<Cache> cache_;
};

/// A acting on G (by automorphisms) and on M (by one matrix per generator of A).
struct Equivariance {
  GroupAction action;
  std::vector<Matrix> module_actions;
};

struct IYBStructure {
  GModule module;
  std::vector<u64> cocycle;  // |G| rows of width rank(); row g is chi(g)
  std::optional<Equivariance> equivariance;

  const Group& group() const { return module.group(); }
  Vec chi(u64 g) const;
  /// Equivariant matrix of an arbitrary element of A.
  Matrix equivariance_matrix(u64 a) const;
};

/// Matrix of element x given the matrices of g's generators.
Matrix element_matrix(const Group& g, const std::vector<Matrix>& generator_mats, const std::vector<u64>& invariants, u64 x);

/// Builds the flat cocycle table from a function on elements.
template <class F>
IYBStructure make_structure(GModule m, F&& chi, std::optional<Equivariance> eq = std::nullopt) {
  IYBStructure s{std::move(m), {}, std::move(eq)};
  const u64 n = s.group().order();
  const std::size_t r = s.module.rank();
  s.cocycle.resize(n * r);
  for (u64 g = 0; g < n; ++g) {
    Vec v = chi(g);
    std::copy(v.begin(), v.end(), s.cocycle.begin() + static_cast<std::ptrdiff_t>(g * r));
  }
  return s;
}

struct Report {
  bool ok = true;
  std::string check;    // name of the failing check
  std::string witness;  // first counterexample
  std::vector<std::string> notes;

  Report& fail(std::string what, std::string why) {
    if (ok) {
      ok = false;
      check = std::move(what);
      witness = std::move(why);
    }
    return *this;
  }
  void merge(const Report& o) {
    if (!o.ok) fail(o.check, o.witness);
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
  }
  std::string summary() const { return ok ? "ok" : check + ": " + witness; }
};

enum class CocycleMode { Auto, Full, Generators };

struct VerifyOptions {
  CocycleMode mode = CocycleMode::Auto;
  unsigned jobs = 0;                  // 0: default_jobs()
  u64 full_limit = 10000;             // Auto uses full mode up to this order
  u64 samples = 100000;               // extra random pairs in generator mode
  std::uint64_t sample_seed = 1;
};

/// Action matrices respect the invariants and define a homomorphism
/// G -> Aut(M) (checked on relators, or on every Cayley edge).
Report verify_module(const GModule& m);
Report verify_cocycle(const IYBStructure& s, const VerifyOptions& opt = {});
Report verify_bijective(const IYBStructure& s);
/// Module and group actions of A are homomorphisms, compatible
/// (a (g x) = (^a g)(a x)), and chi(^a g) = a chi(g) for every generator a.
Report verify_equivariant(const IYBStructure& s);
/// All of the above.
Report verify_structure(const IYBStructure& s, const VerifyOptions& opt = {});

struct TransversalReport {
  bool ok = false;
  Cardinality index;  // [omega : I]
  u64 pairwise_tests = 0;
  std::string witness;
};
/// I inside omega has index |G| and the 1 - g are pairwise incongruent
/// mod I. With exact = true every pair is tested by membership of h - g,
/// otherwise canonical residues are compared.
TransversalReport verify_transversal(const GroupRing& r, const HowellBasis& ideal, bool exact = false);

/// M = omega / I with G acting by left multiplication, chi(g) = 1 - g + I.
/// When `action` is given, I must be stable under it and the structure
/// carries the induced equivariance. Throws ConstructionError on failure.
IYBStructure ideal_to_structure(const GroupRing& r, const HowellBasis& ideal, const GroupAction* action = nullptr);

/// phi = chi2 o chi1^-1 when it is an isomorphism of modules commuting
/// with G and (when both carry one) with A. Returned as a matrix from
/// M1-coordinates to M2-coordinates.
std::optional<Matrix> structures_isomorphic(const IYBStructure& s1, const IYBStructure& s2);

/// chi^-1(S) for the submodule S generated by gens; checks that it is a
/// subgroup of the same size as S.
struct PreimageReport {
  Report report;
  ElementSet preimage;
};
PreimageReport subgroup_preimage_check(const IYBStructure& s, const std::vector<Vec>& gens);

/// Generating sets of every G-submodule of M (A-stable as well when
/// with_equivariance is set). Throws ResourceLimit past `limit`.
std::vector<std::vector<Vec>> module_submodules(const IYBStructure& s, bool with_equivariance = false,
                                                std::size_t limit = 4096);

/// chi~(x) = g^-1 chi(g x g^-1): another cocycle into the same module.
IYBStructure conjugate_structure(const IYBStructure& s, u64 g);

}  // namespace iyb
