#pragma once

// The acceptance suite, shared by `iyb selftest` and the acceptance test
// binary. Each criterion runs against a wall-clock budget.

#include <string>
#include <vector>

namespace iyb::selftest {

struct Options {
  bool quick = false;   // reduced instances, whole run well under 30 s
  std::string workdir;  // certificates are written here; empty: a fresh temp dir
  unsigned jobs = 0;
  bool verbose = false;  // progress lines on stderr
};

struct Criterion {
  int id = 0;
  std::string name;
  std::string modules;  // library modules exercised, for failure reports
  bool pass = false;
  double seconds = 0;
  double budget = 0;
  std::string detail;
};

std::vector<Criterion> run(const Options& opt);

/// "[PASS] 1 name (1.23 s / 60 s) detail"
std::string format_line(const Criterion& c);

}  // namespace iyb::selftest
