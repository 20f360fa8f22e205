#pragma once

#include <cstdint>
#include <functional>

namespace holeperc {

// Worker count: explicit value if > 0, else HOLEPERC_JOBS, else hardware
// concurrency (at least 1).
int resolve_jobs(int requested);

// Runs body(i) for i in [0, count) on up to `jobs` threads. Each index is
// visited exactly once; callers write into per-index slots and reduce
// sequentially afterwards, so results never depend on the worker count.
// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& body);

}  // namespace holeperc
