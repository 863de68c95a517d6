#include "painted/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace painted {

namespace {
std::atomic<int> forced_budget{0};
}

void set_thread_budget(int n) { forced_budget.store(n < 0 ? 0 : n); }

int thread_budget() {
    int forced = forced_budget.load();
    if (forced > 0) return forced;
    if (const char* env = std::getenv("PAINTED_OPERAD_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return omp_get_max_threads();
}

void sweep_serial(std::size_t n, const std::function<void(std::size_t)>& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

void sweep_parallel(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int threads = thread_budget();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long long i = 0; i < (long long)n; ++i) body(std::size_t(i));
}

void sweep(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (thread_budget() <= 1 || n < 2)
        sweep_serial(n, body);
    else
        sweep_parallel(n, body);
}

} // namespace painted
