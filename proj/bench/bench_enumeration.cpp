// Parallel level-synchronous enumeration against the serial depth-first
// reference on the same inputs. Arguments: depth, then worker count for the
// parallel runs.

#include <benchmark/benchmark.h>

#include "billiards/enumeration.hpp"
#include "billiards/rng.hpp"

using namespace billiards;

namespace {

const TriangleShape& irrational() {
    static const TriangleShape t = [] {
        auto rng = make_stream(2024, 0);
        return random_triangle(rng);
    }();
    return t;
}

const TriangleShape& equilateral() {
    static const TriangleShape t = make_rational_triangle(1, 3, 1, 3);
    return t;
}

void run_serial(benchmark::State& state, const TriangleShape& t) {
    const int depth = static_cast<int>(state.range(0));
    std::size_t found = 0;
    for (auto _ : state) {
        const auto r = enumerate_diagonals_serial(t, VertexId::A, depth);
        found = r.diagonals.size();
        benchmark::DoNotOptimize(found);
    }
    state.counters["diagonals"] = static_cast<double>(found);
}

void run_parallel(benchmark::State& state, const TriangleShape& t) {
    const int depth = static_cast<int>(state.range(0));
    EnumerationOptions opts;
    opts.workers = static_cast<int>(state.range(1));
    std::size_t found = 0;
    for (auto _ : state) {
        const auto r = enumerate_diagonals(t, VertexId::A, depth, opts);
        found = r.diagonals.size();
        benchmark::DoNotOptimize(found);
    }
    state.counters["diagonals"] = static_cast<double>(found);
}

void BM_SerialIrrational(benchmark::State& s) { run_serial(s, irrational()); }
void BM_ParallelIrrational(benchmark::State& s) { run_parallel(s, irrational()); }
void BM_SerialEquilateral(benchmark::State& s) { run_serial(s, equilateral()); }
void BM_ParallelEquilateral(benchmark::State& s) { run_parallel(s, equilateral()); }

}  // namespace

BENCHMARK(BM_SerialIrrational)->Args({25, 1})->Args({50, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelIrrational)->ArgsProduct({{25, 50}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SerialEquilateral)->Args({100, 1})->Args({200, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelEquilateral)->ArgsProduct({{100, 200}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
