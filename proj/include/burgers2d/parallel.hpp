#pragma once

#include <functional>

namespace burgers2d {

/// Number of workers for an opt-in parallel run: `requested` capped by the
/// BURGERS2D_THREADS environment variable and the hardware count. When the
/// variable is unset the answer is 1 (sequential).
int resolve_threads(int requested);

/// Runs fn(i) for i in [0, n). With threads <= 1 this is a plain loop;
/// otherwise a static partition over worker threads. Tasks must write to
/// disjoint locations; results do not depend on the schedule.
void parallel_for(int n, const std::function<void(int)>& fn, int threads);

}  // namespace burgers2d
