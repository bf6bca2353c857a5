#pragma once

#include <cstddef>
#include <functional>

namespace mcmlab {

/// MCMLAB_THREADS if set to a positive integer, else the hardware count.
std::size_t thread_count();

/// Runs fn(0..n-1) on up to thread_count() threads. The first exception
/// thrown by any task is rethrown after all threads finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mcmlab
