#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace rgbwforge {

/// Thread count from an explicit value, else RGBWFORGE_THREADS, else 1.
/// A value of 0 means "all hardware threads".
unsigned resolve_threads(std::optional<unsigned> requested);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work items must be
/// independent; the first exception thrown is rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace rgbwforge
