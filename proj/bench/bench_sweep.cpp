// Serial reference loop vs OpenMP sweep over the same random grid.
// usage: bench_sweep [points] [n_max] [threads]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "awrep/sweep.hpp"

using namespace awrep;

int main(int argc, char** argv) {
    const std::size_t points = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 400;
    sweep::RandomOptions opt;
    opt.n_max = argc > 2 ? std::atoi(argv[2]) : 10;
    const int threads = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();

    const auto grid = sweep::random_grid(points, 2024, opt);
    using clock = std::chrono::steady_clock;

    auto t0 = clock::now();
    const auto serial = sweep::run_serial(grid);
    auto t1 = clock::now();
    const auto parallel = sweep::run_parallel(grid, threads);
    auto t2 = clock::now();

    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i)
        same = serial[i].residual == parallel[i].residual && serial[i].pass == parallel[i].pass &&
               serial[i].commutant_dim == parallel[i].commutant_dim;

    const double ts = std::chrono::duration<double>(t1 - t0).count();
    const double tp = std::chrono::duration<double>(t2 - t1).count();
    const auto agg = sweep::aggregate(serial);
    std::printf("points %zu  n_max %d  threads %d\n", grid.size(), opt.n_max, threads);
    std::printf("serial   %8.3f s\n", ts);
    std::printf("parallel %8.3f s  speedup %.2f\n", tp, ts / tp);
    std::printf("passed %zu/%zu  max residual %.3e  identical %s\n", agg.passed, grid.size(), agg.max_residual,
                same ? "yes" : "no");
    return same ? 0 : 1;
}
