#include "diffspec/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace diffspec {

unsigned resolve_thread_count() {
  if (const char* env = std::getenv("DIFFSPEC_THREADS"); env && *env) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_chunks(u64 begin, u64 end, unsigned workers,
                     const std::function<void(u64, u64, unsigned)>& fn) {
  if (begin >= end) return;
  const u64 total = end - begin;
  if (workers == 0) workers = 1;
  if (workers > total) workers = static_cast<unsigned>(total);
  if (workers == 1) {
    fn(begin, end, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const u64 step = total / workers;
  u64 lo = begin;
  for (unsigned w = 0; w < workers; ++w) {
    const u64 hi = (w + 1 == workers) ? end : lo + step;
    pool.emplace_back(fn, lo, hi, w);
    lo = hi;
  }
  for (auto& t : pool) t.join();
}

}  // namespace diffspec
