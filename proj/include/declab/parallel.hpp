#pragma once

#include <functional>

namespace declab {

int resolve_workers(int requested);

/// Splits [0, n) into one contiguous chunk per worker and runs
/// body(begin, end, worker_index) on each. Each index is processed exactly
/// once, so results that are written per-index are independent of the
/// worker count. workers <= 1 runs inline.
void parallel_chunks(long long n, int workers,
                     const std::function<void(long long, long long, int)>& body);

}  // namespace declab
