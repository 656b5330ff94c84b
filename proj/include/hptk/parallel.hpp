#pragma once

#include <cstddef>
#include <functional>

namespace hptk {

// Number of worker threads: HPTK_THREADS if set (clamped to >= 1), else
// hardware concurrency. Results are always assembled in index order, so the
// thread count never changes any output.
std::size_t thread_budget();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; fn must
// only write to per-index slots it owns.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace hptk
