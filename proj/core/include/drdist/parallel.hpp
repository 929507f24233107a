#pragma once

#include <cstddef>
#include <functional>

namespace drdist {

/// Worker count: hardware concurrency, capped by DRDIST_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) over contiguous chunks, one per worker.
/// Each index is visited exactly once; callers write per-index outputs and
/// reduce afterwards in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace drdist
