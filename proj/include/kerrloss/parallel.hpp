#pragma once

#include <cstdint>
#include <functional>

namespace kerrloss {

/// Runtime switch between the OpenMP work loop and the serial reference
/// loop. Both produce identical results; sweeps write into preallocated
/// slots and reductions are performed serially.
void set_parallel_enabled(bool on);
bool parallel_enabled();

/// Invoke fn(i) for i in [0, n). Execution order is unspecified when
/// parallel; bodies must only touch their own slot.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace kerrloss
