#pragma once

#include <cstddef>
#include <functional>

namespace rfde {

enum class ExecutionPolicy { Serial, Parallel };

/// Thread cap: RFDE_THREADS if set to a positive integer, else the number of
/// logical processors.
int thread_limit();

/// Calls body(i) for i in [0, count). Parallel runs an OpenMP loop capped by
/// thread_limit(); the first exception thrown by any iteration is rethrown.
void for_each_index(std::ptrdiff_t count, ExecutionPolicy policy, const std::function<void(std::ptrdiff_t)>& body);

}  // namespace rfde
