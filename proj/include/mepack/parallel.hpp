#pragma once

#include <cstddef>
#include <functional>

namespace mepack {

// Worker cap: hardware concurrency, clamped by the MEPACK_THREADS
// environment variable when set. Always >= 1.
unsigned worker_threads();

// Runs fn(begin, end) over a partition of [0, n) on up to worker_threads()
// threads. Chunks are contiguous and each index is visited exactly once, so
// any computation that writes only to per-index state gives results
// independent of the thread count. Reductions that must be bit-reproducible
// are performed by the caller in index order after the parallel section.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace mepack
