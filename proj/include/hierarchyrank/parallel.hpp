#pragma once

#include <cstddef>
#include <functional>

namespace hierarchyrank {

/// Worker cap: HIERARCHYRANK_THREADS when set to a positive integer,
/// otherwise the hardware concurrency.
std::size_t worker_count();

/// Calls task(i) for i in [0, n) on up to worker_count() threads. Nested
/// calls from inside a task run serially on the calling thread. If tasks
/// throw, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace hierarchyrank
