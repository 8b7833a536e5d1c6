#pragma once

// The Heisenberg group D = D(q) over Z/q and the group A of automorphisms
// generated by
//   alpha1: (n1,n2,n3) -> (z n1, n2, z n3)
//   alpha2: (n1,n2,n3) -> (n1, z n2, z n3)
//   tau:    (n1,n2,n3) -> (n2, n1, n1 n2 - n3)
// where z is the smallest primitive root mod q. A is built as the
// semidirect product (C_{q-1} x C_{q-1}) x| C_2 with tau swapping the
// factors, so the element with index i + (q-1) j + (q-1)^2 t is
// alpha1^i alpha2^j tau^t and the generators are (alpha1, alpha2, tau).

#include <array>

#include "iyb/group.hpp"
#include "iyb/matrix.hpp"

namespace iyb {

struct HertweckGroups {
  u64 q = 0;
  u64 zeta = 0;
  bool q_is_1_mod_4 = false;
  Group d;
  Group a;
  GroupAction action;  // A on D
};

/// Throws ConstructionError unless q is an odd prime. zeta = 0 selects the
/// smallest primitive root; any other primitive root gives the same A.
HertweckGroups hertweck_groups(u64 q, u64 zeta = 0);
inline Group hertweck_D(u64 q) { return Group::heisenberg(q); }

using Mat2 = std::array<std::array<u64, 2>, 2>;

/// Delta(a): the action of a on D/Z(D) = (Z/q)^2 in the basis d1, d2.
/// Delta(alpha1^i alpha2^j tau^t) = diag(z^i, z^j) * antidiag(1,1)^t.
Mat2 delta_rep(const HertweckGroups& h, u64 a);
/// det(Delta(a)) * (1 + Delta(a^-1)^T), the action of a on M = (Z/q)^3.
Matrix delta_module(const HertweckGroups& h, u64 a);
/// The matrices by which d1, d2, d3 act on M.
std::array<Matrix, 3> hertweck_d_action(u64 q);

/// Coordinates of the Heisenberg element with index x.
inline std::array<u64, 3> heis_coords(u64 q, u64 x) { return {x % q, (x / q) % q, x / (q * q)}; }
inline u64 heis_index(u64 q, u64 n1, u64 n2, u64 n3) { return n1 % q + q * (n2 % q) + q * q * (n3 % q); }

}  // namespace iyb
