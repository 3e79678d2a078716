#pragma once

#include <cstddef>
#include <functional>

namespace lociso {

// Worker count used by bulk operations; 0 means hardware concurrency.
void set_worker_count(std::size_t n);
std::size_t worker_count();

// Runs body(worker, begin, end) over contiguous chunks of [0, n). Results
// must be written to per-index slots so that output is independent of
// scheduling.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace lociso
