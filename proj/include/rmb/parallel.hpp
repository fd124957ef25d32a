#pragma once

#include <cstddef>
#include <functional>

namespace rmb {

/// Worker count: RMB_THREADS if set to a positive integer, else hardware concurrency.
unsigned thread_count();

/// Calls fn(i) for i in [0, n) across thread_count() workers. fn must only write
/// to per-index storage; callers reduce in index order to stay deterministic.
/// The first exception thrown by any fn is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rmb
