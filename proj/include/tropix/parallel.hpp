#pragma once

#include <cstddef>
#include <functional>

namespace tropix::detail {

// Number of worker threads: TROPIX_THREADS when set (clamped to [1, 256]),
// otherwise the hardware concurrency.
std::size_t thread_budget();

// Runs fn(i) for i in [0, count) on up to thread_budget() threads with
// static chunking. Every index writes only its own slot, so results do not
// depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace tropix::detail
