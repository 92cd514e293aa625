#pragma once

#include <cstddef>
#include <functional>

namespace l0dag {

/// Worker count from the L0DAG_WORKERS environment variable, falling back to
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on a bounded pool of `workers` threads.
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body, std::size_t workers = 0);

} // namespace l0dag
