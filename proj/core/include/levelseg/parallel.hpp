#pragma once

#include <cstddef>
#include <functional>

namespace levelseg {

/// Worker cap from LEVELSEG_THREADS; 0, unset or unparsable means
/// hardware_concurrency.
unsigned thread_limit();

/// Runs fn(0) .. fn(n-1) on up to `threads` workers (0 = thread_limit()).
/// Each index runs exactly once; the first exception is rethrown after all
/// workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned threads = 0);

}  // namespace levelseg
