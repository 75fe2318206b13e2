// Serial reference vs OpenMP for the two data-parallel maps.

#include <benchmark/benchmark.h>

#include <vector>

#include <omp.h>

#include "xyphonon/ed_oracle.hpp"
#include "xyphonon/io.hpp"
#include "xyphonon/phase_grid.hpp"

using namespace xyp;

namespace {

const auto kLambdas = io::linspace(0.1, 2.0, 32);
const auto kTemps = io::linspace(0.05, 2.0, 16);

void BM_GridSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(classify_grid_serial(10, kLambdas, kTemps));
    state.SetItemsProcessed(state.iterations() * kLambdas.size() * kTemps.size());
}

void BM_GridParallel(benchmark::State& state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(classify_grid(10, kLambdas, kTemps));
    state.SetItemsProcessed(state.iterations() * kLambdas.size() * kTemps.size());
}

void BM_BoundarySerial(benchmark::State& state) {
    const auto grid = classify_grid_serial(10, kLambdas, kTemps);
    for (auto _ : state) benchmark::DoNotOptimize(trace_boundary_serial(10, grid));
}

void BM_BoundaryParallel(benchmark::State& state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    const auto grid = classify_grid_serial(10, kLambdas, kTemps);
    for (auto _ : state) benchmark::DoNotOptimize(trace_boundary(10, grid));
}

// small ED cases only, the full matrix is seconds per iteration
const std::vector<ed::OracleCase> kCases{{4, 0.5, 0.2}, {4, 1.0, 1.0}, {4, 2.0, 0.6}, {6, 1.0, 0.2}};

void BM_OracleSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ed::run_oracle_matrix_serial(kCases));
}

void BM_OracleParallel(benchmark::State& state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ed::run_oracle_matrix(kCases));
}

}  // namespace

BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundarySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundaryParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
