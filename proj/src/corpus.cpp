#include "iyb/corpus.hpp"

#include "iyb/error.hpp"

namespace iyb {

namespace {

// H = <h> cyclic acting on N through the automorphism with the given images
// of N's generators.
Group cyclic_extension(const Group& n, u64 h_order, const std::vector<u64>& gen_images) {
  Perm p = Automorphism::from_generator_images(n, gen_images).perm();
  return Group::semidirect(GroupAction(Group::cyclic(h_order), n, {p}));
}

}  // namespace

std::vector<NamedGroup> small_group_corpus(u64 order) {
  std::vector<NamedGroup> out;
  if (order == 8) {
    out = {{"C8", Group::cyclic(8)},
           {"C4xC2", Group::abelian({4, 2})},
           {"C2^3", Group::abelian({2, 2, 2})},
           {"D8", Group::dihedral(4)},
           {"Q8", Group::quaternion()}};
  } else if (order == 16) {
    Group c4c2 = Group::abelian({4, 2});  // a = 1, b = 4
    Group c8 = Group::cyclic(8);
    out = {{"C16", Group::cyclic(16)},
           {"C4xC4", Group::abelian({4, 4})},
           {"(C4xC2):C2", cyclic_extension(c4c2, 2, {5, 4})},  // a -> ab
           {"C4:C4", cyclic_extension(Group::cyclic(4), 4, {3})},
           {"C8xC2", Group::abelian({8, 2})},
           {"M16", cyclic_extension(c8, 2, {5})},
           {"D16", Group::dihedral(8)},
           {"SD16", cyclic_extension(c8, 2, {3})},
           {"Q16", Group::dicyclic(4)},
           {"C4xC2xC2", Group::abelian({4, 2, 2})},
           {"C2xD8", Group::direct_product(Group::cyclic(2), Group::dihedral(4))},
           {"C2xQ8", Group::direct_product(Group::cyclic(2), Group::quaternion())},
           {"Pauli", cyclic_extension(c4c2, 2, {1, 6})},  // b -> a^2 b
           {"C2^4", Group::abelian({2, 2, 2, 2})}};
  } else if (order == 32) {
    out = {{"C32", Group::cyclic(32)},
           {"C2^5", Group::abelian({2, 2, 2, 2, 2})},
           {"C8xC4", Group::abelian({8, 4})},
           {"D32", Group::dihedral(16)},
           {"Q32", Group::dicyclic(8)},
           {"D8xC2xC2", Group::direct_product(Group::dihedral(4), Group::abelian({2, 2}))}};
  } else {
    throw Error("no corpus for order " + std::to_string(order));
  }
  return out;
}

GroupAction s3_action() {
  Group n = Group::cyclic(3);
  return GroupAction(Group::cyclic(2), n, {Automorphism::from_generator_images(n, {2}).perm()});
}

GroupAction a4_action() {
  Group v = Group::abelian({2, 2});  // a = 1, b = 2, ab = 3
  return GroupAction(Group::cyclic(3), v, {Automorphism::from_generator_images(v, {2, 3}).perm()});
}

GroupAction sl23_action() {
  Group q = Group::quaternion();  // x = 1 (order 4), y = 4; x -> y, y -> xy
  u64 x = 1, y = 4;
  return GroupAction(Group::cyclic(3), q, {Automorphism::from_generator_images(q, {y, q.mul(x, y)}).perm()});
}

}  // namespace iyb
