#pragma once

#include <functional>

#include "diffspec/intmath.hpp"

namespace diffspec {

/// Worker count: DIFFSPEC_THREADS when set and nonzero, otherwise the
/// hardware concurrency.
unsigned resolve_thread_count();

/// Splits [begin, end) into one contiguous chunk per worker and runs
/// fn(lo, hi, worker) on each. Deterministic chunking; fn must only touch
/// worker-private state (merge afterwards).
void parallel_chunks(u64 begin, u64 end, unsigned workers,
                     const std::function<void(u64, u64, unsigned)>& fn);

}  // namespace diffspec
