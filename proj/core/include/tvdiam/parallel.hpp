#pragma once

#include <cstddef>
#include <functional>

namespace tvdiam {

// Worker count for data-parallel loops: TVDIAM_THREADS when set (clamped to
// at least 1), otherwise the hardware concurrency capped at 8.
unsigned thread_budget();

// Runs fn(i) for i in [0, n) across the thread budget. Results must be
// written to caller-owned slots indexed by i, so the outcome is independent
// of scheduling. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace tvdiam
