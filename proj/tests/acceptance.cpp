// One line per acceptance criterion; nonzero exit when any fails.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "selftest.hpp"

int main(int argc, char** argv) {
  iyb::selftest::Options opt;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--quick")) opt.quick = true;
    else if (!std::strcmp(argv[i], "--verbose")) opt.verbose = true;
    else if (!std::strcmp(argv[i], "--workdir") && i + 1 < argc) opt.workdir = argv[++i];
  }
  int failed = 0;
  for (const auto& c : iyb::selftest::run(opt)) {
    std::cout << iyb::selftest::format_line(c) << std::endl;
    failed += !c.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all 10 criteria passed") << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
