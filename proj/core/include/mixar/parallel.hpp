#pragma once

#include <cstddef>
#include <functional>

namespace mixar {

/// Number of workers used when a caller passes threads == 0.
unsigned default_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers.
///
/// Indices are claimed one at a time by idle workers; body must only write to
/// storage owned by its index so results do not depend on the worker count.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace mixar
