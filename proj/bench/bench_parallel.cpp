// Timing comparison between the serial reference paths and the OpenMP ones:
// per-core profiling and sweep-point evaluation. Not a correctness test (the
// equivalence checks live in the test suite); this reports wall times.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "cachemodel/profiler.hpp"
#include "cachemodel/sweep.hpp"
#include "cachemodel/trace.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cachemodel;

namespace {

template <typename F>
double time_seconds(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t records = 400000;
    if (argc > 1) records = std::strtoull(argv[1], nullptr, 10);

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
    std::printf("built without OpenMP; both paths run serially\n");
#endif

    SyntheticSpec spec;
    spec.core_count = 4;
    spec.records_per_core = records;
    spec.private_footprint = 2048;
    spec.shared_footprint = 512;
    spec.sharing_fraction = 0.3;
    spec.write_fraction = 0.3;
    spec.seed = 1;
    std::printf("generating %llu records across %u cores...\n",
                static_cast<unsigned long long>(records * spec.core_count), spec.core_count);
    const Trace trace = generate(spec);
    const CacheGeometry l1 = CacheGeometry::make(32 << 10, 8, 64);

    const double profile_serial = time_seconds([&] { profile_trace_serial(trace, l1, 1024); });
    const double profile_parallel =
        time_seconds([&] { profile_trace(trace, l1, 1024, threads); });

    SweepSpec sweep;
    sweep.cap = 1024;
    sweep.grid = cross_grid({16 << 10, 32 << 10, 64 << 10}, {2, 8},
                            {256 << 10, 1 << 20, 4 << 20}, {8, 16}, 64);
    const double sweep_serial = time_seconds([&] { run_sweep(trace, sweep, 1); });
    const double sweep_parallel = time_seconds([&] { run_sweep(trace, sweep, threads); });

    std::printf("\n%-28s %10s %10s %8s\n", "kernel", "serial", "omp", "speedup");
    std::printf("%-28s %9.3fs %9.3fs %7.2fx\n", "profile (4 cores)", profile_serial,
                profile_parallel, profile_serial / profile_parallel);
    std::printf("%-28s %9.3fs %9.3fs %7.2fx\n", "sweep (36 points)", sweep_serial,
                sweep_parallel, sweep_serial / sweep_parallel);
    std::printf("\nthreads: %d\n", threads);
    return 0;
}
