#pragma once

#include <cstddef>
#include <functional>

namespace zeta_osc {

/// Worker count from ZETA_OSC_THREADS if set to a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
unsigned default_worker_count();

/// Calls task(i) for i in [0, n_tasks) on up to `workers` threads.
/// Task scheduling order is unspecified, so tasks must write disjoint
/// outputs. The first exception thrown by any task is rethrown after join.
void parallel_for(std::size_t n_tasks, unsigned workers,
                  const std::function<void(std::size_t)>& task);

}  // namespace zeta_osc
