#pragma once

#include <cstddef>
#include <functional>

namespace secrisk {

/// Runs `task(i)` for every i in [0, count) on up to `max_workers` threads.
/// Callers write results into pre-sized slots indexed by i, so the output
/// order never depends on scheduling. Exceptions from tasks are rethrown
/// on the calling thread (first one wins).
void parallel_for(std::size_t count, std::size_t max_workers,
                  const std::function<void(std::size_t)>& task);

std::size_t default_worker_count();

}  // namespace secrisk
