#include "iyb/parallel.hpp"

#include <cstdlib>
#include <string>

namespace iyb {

namespace {
std::atomic<unsigned> g_jobs{0};
}

unsigned default_jobs() {
  if (unsigned j = g_jobs.load()) return j;
  if (const char* env = std::getenv("IYB_JOBS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_jobs(unsigned jobs) { g_jobs.store(jobs); }

}  // namespace iyb
