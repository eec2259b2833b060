#pragma once

#include <cstddef>

#include <functional>

namespace hazbands {

/// Worker count: HAZBANDS_THREADS when set (floored at 1), otherwise the
/// hardware concurrency.
std::size_t thread_budget();

/// Run body(i) for i in [0, n) across up to n_threads workers (0 = budget).
/// Work is handed out through an atomic counter; the first exception is
/// rethrown on the caller's thread after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t n_threads = 0);

}  // namespace hazbands
