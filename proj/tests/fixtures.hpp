#pragma once

// Small hand-made structures shared by several test files.

#include "iyb/constructors.hpp"

namespace iyb::fixture {

/// C_n acting trivially on Z/n with chi(g^i) = i.
inline IYBStructure cyclic_trivial(u64 n) {
  return make_structure(GModule::trivial(Group::cyclic(n), {n}), [](u64 x) { return Vec{x}; });
}

/// Inversion action of C_2 on C_n.
inline GroupAction inversion_action(u64 n) {
  Group c = Group::cyclic(n);
  Perm p(n);
  for (u64 x = 0; x < n; ++x) p[x] = c.inv(x);
  return GroupAction(Group::cyclic(2), c, {p});
}

/// cyclic_trivial(n), equivariant under inversion (acting by -1 on Z/n).
inline IYBStructure cyclic_with_inversion(u64 n) {
  IYBStructure s = cyclic_trivial(n);
  GroupAction act = inversion_action(n);
  s.module = GModule::trivial(act.target(), {n});
  s.equivariance = Equivariance{act, {Matrix{{n - 1}}}};
  return s;
}

/// Module automorphism P applied to s: chi' = P chi, actions P A P^-1.
inline IYBStructure transport(const IYBStructure& s, const Matrix& p, const Matrix& p_inv) {
  const auto& inv = s.module.invariants();
  std::vector<Matrix> mats;
  for (const auto& a : s.module.generator_actions())
    mats.push_back(multiply_matrices(multiply_matrices(p, a, inv), p_inv, inv));
  std::optional<Equivariance> eq;
  if (s.equivariance) {
    std::vector<Matrix> em;
    for (const auto& a : s.equivariance->module_actions)
      em.push_back(multiply_matrices(multiply_matrices(p, a, inv), p_inv, inv));
    eq = Equivariance{s.equivariance->action, std::move(em)};
  }
  return make_structure(GModule(s.group(), inv, std::move(mats)),
                        [&](u64 x) { return apply_matrix(p, s.chi(x), inv); }, std::move(eq));
}

}  // namespace iyb::fixture
