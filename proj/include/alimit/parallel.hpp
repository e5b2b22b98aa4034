#pragma once

#include <cstddef>
#include <functional>

namespace alimit {

/// Worker count: hardware concurrency, capped by ALPHA_LIMIT_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Exceptions from any task are rethrown (the
/// first one observed) after all workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace alimit
