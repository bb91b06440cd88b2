#pragma once

#include <cstddef>
#include <functional>

namespace mfl {

/// Worker count from MFL_WORKERS, else the available hardware parallelism.
int default_worker_count();

/// Runs fn(i) for i in [0, count) on up to `workers` threads (0 = default).
/// Each index is handled exactly once; callers write results into slot i so
/// the outcome does not depend on scheduling. The first exception thrown by
/// any task is rethrown after all workers join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace mfl
