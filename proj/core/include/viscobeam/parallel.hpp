#pragma once

#include <functional>

namespace viscobeam {

/// Worker budget: VISCOBEAM_THREADS when set (at least 1), otherwise the
/// hardware concurrency.
int thread_budget();

/// Runs fn(0..n-1) on up to `threads` workers (0 = thread_budget()).
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(int n, const std::function<void(int)>& fn, int threads = 0);

} // namespace viscobeam
