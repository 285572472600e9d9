#pragma once

#include <functional>

namespace nlup {

/// Number of worker threads: min(hardware, NLUP_THREADS env, explicit cap).
int worker_count();

/// Caps worker parallelism (0 = uncapped). Overrides the NLUP_THREADS
/// environment variable; intended for tests and CLI plumbing.
void set_max_workers(int n);

/// Runs fn(i) for i in [0, n). Work is dealt in fixed-size blocks from a
/// shared counter, so results must be written to disjoint, index-owned
/// slots; given that, the outcome is identical for any thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

/// Block variant: fn(begin, end) over fixed-size chunks. The chunk
/// boundaries depend only on n and `block`, never on the thread count.
void parallel_blocks(int n, int block, const std::function<void(int, int)>& fn);

}  // namespace nlup
