#pragma once

#include <cstddef>
#include <functional>

namespace frechet {

// Worker count for sample fan-out: FRECHET_SOLVE_THREADS caps it, hardware
// concurrency is the default.
int worker_count();

// Runs body(i) for i in [0, count) across workers.  Iterations must be
// independent; results must be written to per-index slots so the outcome is
// identical for any worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace frechet
