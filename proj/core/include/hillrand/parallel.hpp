#pragma once

#include <functional>

namespace hillrand {

/// Worker count: HILLRAND_THREADS if set (>0), else hardware concurrency.
int default_thread_count();

/// Runs fn(0..n-1) across a worker pool. Each task must write only to its
/// own output slot; callers combine results in index order so the outcome is
/// identical for any thread count.
void parallel_for(long n, const std::function<void(long)>& fn);

} // namespace hillrand
