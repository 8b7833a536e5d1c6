#pragma once

// Randomized lifting of complementing left ideals along central quotients,
// a brute-force ideal enumerator for tiny groups, and a dispatcher that
// picks a construction for a group (optionally given as N x| H).

#include <optional>
#include <string>

#include "iyb/certificate.hpp"
#include "iyb/constructors.hpp"

namespace iyb {

enum class HyperplaneMode { Random, Exhaustive };

struct SearchConfig {
  u64 seed = 42;
  unsigned max_restarts = 100;
  HyperplaneMode hyperplanes = HyperplaneMode::Random;
  unsigned k = 0;  // modulus p^k; 0 selects k = log_p |G|
  bool deterministic = true;
  unsigned jobs = 0;  // 0: default_jobs()
  u64 max_order = 1024;
};

struct LevelRecord {
  u64 order = 0;         // order of the group at this level
  u64 central = 0;       // chosen central element n (0 at the base case)
  u64 hyperplanes = 0;   // number of hyperplanes avoiding 1 - n
  u64 choice = 0;        // index of the chosen hyperplane
  std::string outcome;   // "ok", "1-n in rad J", "not a transversal", ...
};

struct RestartRecord {
  u64 restart = 0;
  unsigned k = 0;
  bool success = false;
  std::string failure;
  std::vector<LevelRecord> levels;
  double seconds = 0;
};

struct SearchTrace {
  u64 seed = 0;
  std::vector<RestartRecord> restarts;  // in restart order
  std::optional<u64> winner;
};
nlohmann::json trace_json(const SearchTrace& t);

struct SearchResult {
  GroupRing ring;
  HowellBasis ideal;
  IYBStructure structure;
  SearchTrace trace;
  u64 restart = 0;
  unsigned k = 0;
};

/// omega^2 + p omega in (Z/p^k) C_p.
HowellBasis base_case_ideal(const GroupRing& r);

/// Runs restarts until one yields a verified complementing ideal. Throws
/// ConstructionError ("inconclusive") when every restart fails.
SearchResult heuristic_lift(const Group& g, const SearchConfig& cfg);
/// Re-runs one restart of heuristic_lift.
RestartRecord replay_restart(const Group& g, const SearchConfig& cfg, u64 restart, std::optional<HowellBasis>* ideal = nullptr);

/// All complementing left ideals inside omega over Z/p^k, sorted by their
/// Howell rows. Empty for the trivial group.
std::vector<HowellBasis> brute_force_ideals(const Group& g, unsigned k, std::size_t limit = 100000);

struct SearchHints {
  std::optional<GroupAction> semidirect;  // G = N x| H, given by H acting on N
};

struct SearchOutcome {
  IYBStructure structure;
  nlohmann::json certificate;
  std::string strategy;
  std::optional<SearchTrace> trace;
};
/// Hinted coprime N x| H with N a class-2 p-group: equivariant structure on
/// N, a structure on H found recursively, combined. Otherwise: odd class 2
/// uses class2_odd, p-groups use heuristic_lift.
SearchOutcome iyb_search(const Group& g, const SearchHints& hints, const SearchConfig& cfg);

}  // namespace iyb
