#pragma once

#include <cstddef>
#include <functional>

namespace fanforge {

/// Worker count: FANFORGE_THREADS if set and positive, else the hardware
/// concurrency, never below 1.
unsigned worker_count();

/// Calls body(i) for i in [0, count). Indices are handed out dynamically;
/// the first exception thrown is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fanforge
