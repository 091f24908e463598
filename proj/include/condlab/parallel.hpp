#pragma once

#include <functional>

#include "condlab/types.hpp"

namespace condlab {

/// Worker count: CONDLAB_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is processed by exactly one
/// worker and results must be written to per-index slots, so output does
/// not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(Index n, const std::function<void(Index)>& body);

}  // namespace condlab
