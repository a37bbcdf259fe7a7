#pragma once

#include <cstddef>
#include <functional>

namespace cottonlab {

/// Worker count: COTTONLAB_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for i in [0, n). Each index is visited exactly once; the
/// body must write only to slots owned by its index. The first exception
/// thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cottonlab
