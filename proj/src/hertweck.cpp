#include "iyb/hertweck.hpp"

#include "iyb/error.hpp"

namespace iyb {

HertweckGroups hertweck_groups(u64 q, u64 zeta) {
  if (q < 3 || q % 2 == 0 || !is_prime(q)) throw ConstructionError("q must be an odd prime, got " + std::to_string(q));
  HertweckGroups h;
  h.q = q;
  h.zeta = zeta == 0 ? smallest_primitive_root(q) : zeta % q;
  for (auto [p, e] : factorize(q - 1))
    if (powmod(h.zeta, (q - 1) / p, q) == 1) throw ConstructionError("zeta is not a primitive root mod q");
  h.q_is_1_mod_4 = q % 4 == 1;
  h.d = Group::heisenberg(q);

  Group base = Group::abelian({q - 1, q - 1});
  Perm swap(base.order());
  for (u64 x = 0; x < base.order(); ++x) swap[x] = (x / (q - 1)) + (q - 1) * (x % (q - 1));
  h.a = Group::semidirect(GroupAction(Group::cyclic(2), base, {swap}));

  const u64 z = h.zeta;
  const u64 n = h.d.order();
  Perm a1(n), a2(n), t(n);
  for (u64 x = 0; x < n; ++x) {
    auto [n1, n2, n3] = heis_coords(q, x);
    a1[x] = heis_index(q, mulmod(z, n1, q), n2, mulmod(z, n3, q));
    a2[x] = heis_index(q, n1, mulmod(z, n2, q), mulmod(z, n3, q));
    t[x] = heis_index(q, n2, n1, submod(mulmod(n1, n2, q), n3, q));
  }
  h.action = GroupAction(h.a, h.d, {a1, a2, t});
  return h;
}

Mat2 delta_rep(const HertweckGroups& h, u64 a) {
  const u64 q = h.q, k = q - 1;
  u64 i = a % k, j = (a / k) % k, t = a / (k * k);
  u64 zi = powmod(h.zeta, i, q), zj = powmod(h.zeta, j, q);
  if (t == 0) return Mat2{{{zi, 0}, {0, zj}}};
  return Mat2{{{0, zi}, {zj, 0}}};
}

Matrix delta_module(const HertweckGroups& h, u64 a) {
  const u64 q = h.q;
  Mat2 d = delta_rep(h, a);
  Mat2 di = delta_rep(h, h.a.inv(a));
  u64 det = submod(mulmod(d[0][0], d[1][1], q), mulmod(d[0][1], d[1][0], q), q);
  Matrix m(3, Vec(3, 0));
  m[0][0] = det;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m[1 + r][1 + c] = mulmod(det, di[c][r], q);
  return m;
}

std::array<Matrix, 3> hertweck_d_action(u64 q) {
  (void)q;
  Matrix d1{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  Matrix d2{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}};
  return {d1, d2, identity_matrix(3)};
}

}  // namespace iyb
