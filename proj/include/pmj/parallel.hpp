#pragma once

#include <cstddef>
#include <functional>

namespace pmj {

/// Number of worker threads used by data-parallel loops. Zero means
/// std::thread::hardware_concurrency().
void set_worker_count(unsigned workers);
unsigned worker_count();

/// Runs body(i) for i in [0, count). Work items are independent; callers
/// write results into per-item slots so the outcome never depends on the
/// schedule. Exceptions from body are rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace pmj
