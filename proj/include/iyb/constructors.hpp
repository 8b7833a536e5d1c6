#pragma once

// Structure-producing constructions. Every builder runs the independent
// verifier on its output and throws ConstructionError when it fails.

#include <optional>

#include "iyb/hertweck.hpp"
#include "iyb/structure.hpp"

namespace iyb {

/// The structure on N x| H (as built by Group::semidirect(act)) with
/// M = M_N + M_H, chi(n h) = (chi_N(n), chi_H(h)). s_n must be equivariant
/// under exactly `act`. When H is trivial, s_n is returned without its
/// equivariance data.
IYBStructure combine_semidirect(const IYBStructure& s_h, const IYBStructure& s_n, const GroupAction& act);

struct HallSplit {
  u64 conjugator = 0;  // g with chi^-1(M_H) = g H g^-1
  IYBStructure s_h;    // on the complement H
  IYBStructure s_n;    // on N, H-equivariant
};
/// Splits a structure on a semidirect product N x| H with gcd(|N|,|H|) = 1.
HallSplit hall_decompose(const IYBStructure& s);

/// Coordinatewise structure on G^n, equivariant under A wr S_n, or under B
/// through a homomorphism B -> A wr S_n given by generator images.
IYBStructure power_wreath(const IYBStructure& s, unsigned n, const Group* b = nullptr,
                          const std::vector<u64>* b_images = nullptr);

/// n1 + n2 = n1 n2 sqrt([n2, n1]) on an odd group of class at most 2, with
/// ^{n1} n2 = n1 n2 + n1^-1. Equivariant under `action` when given.
IYBStructure class2_odd(const Group& n, const GroupAction* action = nullptr);
/// The addition used by class2_odd.
u64 class2_add(const Group& n, u64 x, u64 y);

struct SandlingResult {
  GroupRing ring;
  HowellBasis ideal;
  TransversalReport transversal;
  IYBStructure structure;
};
/// Equivariant structure on a class-2 p-group N for a coprime action of H,
/// from an H-stable complement of 1 - N inside omega over Z/p^(k_factor*n).
SandlingResult class2_equivariant_sandling(const GroupAction& h_on_n, unsigned k_factor = 1);

/// The structure on D(q) with M = (Z/q)^3 and
/// chi(n1,n2,n3) = (n3 - n1 n2/2, -n2/2, n1/2), equivariant under A.
/// q must be 1 mod 4 unless allow_any_odd_q is set.
IYBStructure hertweck_d_structure(const HertweckGroups& h, bool allow_any_odd_q = false);
/// Explicit inverse of the cocycle above.
u64 hertweck_chi_inverse(u64 q, const Vec& m);

/// The same structure, equivariant under B through B -> A (generator images).
IYBStructure restrict_equivariance(const IYBStructure& s, const Group& b, const std::vector<u64>& images);
/// Structure with the equivariance data removed.
IYBStructure forget_equivariance(IYBStructure s);

/// Throws ConstructionError carrying the report's failure.
void require_verified(const IYBStructure& s, const std::string& who, const VerifyOptions& opt = {});

}  // namespace iyb
