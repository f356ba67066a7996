// parallel.hpp — minimal fork-join helper for embarrassingly parallel loops.

#pragma once

#include <cstdint>
#include <functional>

namespace qbm {

// Worker threads to use: the QBM_THREADS environment variable if set and
// positive, otherwise the hardware concurrency.
int worker_count();

// Calls fn(begin, end) on disjoint chunks of [0, n) across workers. Chunk
// boundaries are aligned to multiples of 4; any exception is rethrown on the
// calling thread.
void parallel_for_chunks(
    std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace qbm
