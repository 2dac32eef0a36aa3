#pragma once

#include <cstddef>
#include <functional>

namespace twinfocal {

// Worker count from TWINFOCAL_THREADS (0 or unset = hardware concurrency).
unsigned thread_count();

// Calls body(i) for every i in [0, n). Each index is handled by exactly one
// worker; callers write results into per-index slots so output does not
// depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace twinfocal
