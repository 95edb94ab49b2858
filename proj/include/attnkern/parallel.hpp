#pragma once

#include <cstddef>
#include <functional>

namespace attnkern {

// Worker cap from ATTNKERN_THREADS (0 or unset = hardware concurrency).
std::size_t thread_cap();

// Runs fn(i) for i in [0, n). Work items must be independent; any exception
// is rethrown on the calling thread after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace attnkern
