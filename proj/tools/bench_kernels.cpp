// Times the OpenMP-parallel kernels against the single-thread path they share
// code with. Each workload runs once with the thread budget forced to 1 and
// once with the configured budget; the parallel answer must match the serial
// one. Exact rational arithmetic dominates these kernels, so speedups are a
// sanity signal rather than a promise.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "painted/cohomology.hpp"
#include "painted/formal.hpp"
#include "painted/lalgebra.hpp"
#include "painted/parallel.hpp"

using namespace painted;

namespace {

double time_once(const std::function<void()>& work) {
    const auto start = std::chrono::steady_clock::now();
    work();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return elapsed.count();
}

int failures = 0;

// `work` recomputes; `answers_agree` compares the latest answer against the
// one the serial run left behind.
void bench(const std::string& name, const std::function<void()>& work,
           const std::function<bool()>& answers_agree) {
    set_thread_budget(1);
    const double serial = time_once(work);
    set_thread_budget(0);
    const double parallel = time_once(work);
    const bool ok = answers_agree();
    if (!ok) ++failures;
    std::printf("%-28s %9.3fs %9.3fs %7.2fx  %s\n", name.c_str(), serial, parallel,
                parallel > 0 ? serial / parallel : 0.0,
                ok ? "answers agree" : "ANSWER MISMATCH");
}

} // namespace

int main() {
    set_thread_budget(0);
    std::printf("threads available: %d\n", thread_budget());
    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "parallel", "speedup");

    {
        const PaintedSet s{7, 0};
        std::vector<std::vector<int>> tables;
        bench(
            "ring relations, 7 whites",
            [&] {
                Ring ring(s);
                ring.warm();
                tables.push_back(ring.betti());
            },
            [&] { return tables.size() == 2 && tables[0] == tables[1] && tables[0][0] == 1; });
    }

    {
        const LAlgebra alg = random_valid_lalgebra(11, 2, 3, 6);
        std::vector<std::size_t> counts;
        bench(
            "algebra identity checks",
            [&] { counts.push_back(verify(alg).size()); },
            [&] { return counts.size() == 2 && counts[0] == counts[1] && counts[0] == 0; });
    }

    {
        const LAlgebra alg = random_exchange_lalgebra(12, 3, 3, 6);
        const Series b = build_B(alg);
        std::vector<bool> passes;
        bench(
            "series commutators",
            [&] { passes.push_back(check_comm(b).pass); },
            [&] { return passes.size() == 2 && passes[0] && passes[1]; });
    }

    if (failures) {
        std::fprintf(stderr, "%d kernel(s) disagreed between serial and parallel runs\n",
                     failures);
        return 1;
    }
    return 0;
}
