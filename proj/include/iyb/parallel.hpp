#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>
#include <vector>

#include "iyb/arith.hpp"

namespace iyb {

/// Worker count used when callers do not pass one: set_default_jobs(), else
/// the IYB_JOBS environment variable, else the hardware concurrency.
unsigned default_jobs();
void set_default_jobs(unsigned jobs);

/// Smallest i in [0, n) with ok(i) == false, or nullopt. The index ranges
/// are split across workers; the answer does not depend on the worker count.
template <class Pred>
std::optional<u64> parallel_find_failure(u64 n, Pred ok, unsigned jobs = 0) {
  if (jobs == 0) jobs = default_jobs();
  jobs = static_cast<unsigned>(std::max<u64>(1, std::min<u64>(jobs, n / 4096 + 1)));
  std::atomic<u64> best{n};
  auto run = [&](u64 begin, u64 end) {
    for (u64 i = begin; i < end; ++i) {
      if ((i & 1023) == 0 && i > best.load(std::memory_order_relaxed)) return;
      if (!ok(i)) {
        u64 cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  };
  if (jobs == 1) {
    run(0, n);
  } else {
    std::vector<std::thread> pool;
    u64 chunk = (n + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
      u64 b = t * chunk, e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(run, b, e);
    }
    for (auto& th : pool) th.join();
  }
  u64 r = best.load();
  if (r == n) return std::nullopt;
  return r;
}

}  // namespace iyb
