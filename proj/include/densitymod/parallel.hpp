#pragma once

#include <cstddef>
#include <functional>

namespace densitymod {

// Worker count: DENSITYMOD_THREADS if set and positive, else the hardware count.
int thread_count();
// Runs fn(i) for i in [0, count) on up to thread_count() threads.
// The first exception thrown by any task is rethrown.
void parallel_for(size_t count, const std::function<void(size_t)>& fn);

}  // namespace densitymod
