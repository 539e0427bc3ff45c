#pragma once

#include <cstddef>
#include <functional>

namespace extremal_sl {

/// Number of worker threads to use for `njobs` independent jobs: the minimum
/// of njobs, the hardware concurrency, and the EXTREMAL_SL_THREADS environment
/// variable when set to a positive integer.  Always at least 1.
std::size_t thread_budget(std::size_t njobs);

/// Runs fn(0), ..., fn(njobs-1), possibly concurrently, returning once all
/// have finished.  Results must be written to preallocated, index-disjoint
/// slots.  The first exception thrown by any job is rethrown on the caller's
/// thread.  Output values are independent of the thread budget.
void parallel_for(std::size_t njobs, const std::function<void(std::size_t)>& fn);

} // namespace extremal_sl
