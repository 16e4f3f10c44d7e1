#pragma once

#include <cstddef>
#include <functional>

namespace qladder {

/// Worker count: QLADDER_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, n) over contiguous chunks on up to thread_count()
/// threads. Each index is visited exactly once; the body must only write to
/// index-owned storage. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qladder
