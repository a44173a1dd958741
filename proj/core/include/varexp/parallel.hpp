#pragma once

#include <cstddef>
#include <functional>

namespace varexp {

// Worker count from VAREXP_THREADS (default 1).
std::size_t thread_count();

// Runs body(i) for i in [0, n). Each index writes only its own output slot,
// so results do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace varexp
