#pragma once

#include <cstddef>
#include <functional>

namespace cilab::detail {

/// Worker count from LAB_THREADS (default: hardware concurrency, at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is visited once;
/// callers write into per-index slots and reduce afterwards so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cilab::detail
