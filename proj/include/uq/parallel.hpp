#pragma once

#include <cstddef>
#include <functional>

namespace uq {

// Runs fn(i) for i in [0, n) across hardware threads in static blocks.
// Callers must make iteration i's result independent of scheduling (each
// writes its own pre-allocated slot, randomness from per-index streams).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace uq
