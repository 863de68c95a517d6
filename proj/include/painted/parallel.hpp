#pragma once

#include <cstddef>
#include <functional>

namespace painted {

// Worker budget for the OpenMP kernels. Resolution order:
// PAINTED_OPERAD_THREADS env var (clamped to >= 1), else the OpenMP default.
int thread_budget();

// Force a budget programmatically (used by the benchmark); 0 = back to env.
void set_thread_budget(int n);

// Index sweep over [0, n). The parallel variant partitions the range across
// the thread budget; results must be written to disjoint slots by the body.
// The serial variant is the reference the tests compare against.
void sweep_serial(std::size_t n, const std::function<void(std::size_t)>& body);
void sweep_parallel(std::size_t n, const std::function<void(std::size_t)>& body);

// Dispatches to the parallel sweep unless the budget is 1.
void sweep(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace painted
