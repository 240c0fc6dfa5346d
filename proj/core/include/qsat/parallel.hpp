#pragma once

#include <cstddef>
#include <functional>

namespace qsat {

/// Worker cap: QSAT_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count) over at most worker_count() threads.
/// Iterations must be independent; exceptions are rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qsat
