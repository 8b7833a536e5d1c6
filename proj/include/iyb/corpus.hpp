#pragma once

// Small groups used by the self-test: every group of order 8 and 16, and a
// handful of order 32, each built from structured constructors.

#include <string>
#include <vector>

#include "iyb/group.hpp"

namespace iyb {

struct NamedGroup {
  std::string name;
  Group group;
};

/// Supported orders: 8 (all 5 groups), 16 (all 14), 32 (a sample of 6).
std::vector<NamedGroup> small_group_corpus(u64 order);

/// Standard assemblies: S3 = C3 x| C2, A4 = V4 x| C3, SL(2,3) = Q8 x| C3.
GroupAction s3_action();
GroupAction a4_action();
GroupAction sl23_action();

}  // namespace iyb
