// Serial reference against the OpenMP kernels.

#include "lattes/expansion.hpp"
#include "lattes/kernels.hpp"
#include "lattes/metrics.hpp"

#include <benchmark/benchmark.h>

using namespace lattes;

namespace {

const pillow::LattesTypeMap& map2()
{
    static auto m = pillow::make_map(exact::IntMat2::scalar(2));
    return m;
}

void BM_CountCells(benchmark::State& state, Exec exec)
{
    pillow::Level level(map2(), static_cast<unsigned>(state.range(0)));
    for (auto _ : state) {
        auto c = exec == Exec::parallel ? kernels::count_cells_parallel(level) : kernels::count_cells_serial(level);
        benchmark::DoNotOptimize(c);
    }
}

void BM_DistanceMatrix(benchmark::State& state, Exec exec)
{
    pillow::Level level(map2(), static_cast<unsigned>(state.range(0)));
    std::vector<std::vector<pillow::TileIndex>> sets;
    for (const auto& p : metrics::default_samples(8))
        sets.push_back(pillow::tiles_containing(level, p));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::chain_distance_matrix(level, sets, exec));
}

void BM_DnSweep(benchmark::State& state, Exec exec)
{
    auto shear = pillow::make_map({2, 1, 0, 2});
    for (auto _ : state)
        benchmark::DoNotOptimize(expansion::dn_sweep(shear, 1, static_cast<unsigned>(state.range(0)), {}, exec));
}

} // namespace

BENCHMARK_CAPTURE(BM_CountCells, serial, Exec::serial)->Arg(4)->Arg(6);
BENCHMARK_CAPTURE(BM_CountCells, parallel, Exec::parallel)->Arg(4)->Arg(6);
BENCHMARK_CAPTURE(BM_DistanceMatrix, serial, Exec::serial)->Arg(5)->Arg(7);
BENCHMARK_CAPTURE(BM_DistanceMatrix, parallel, Exec::parallel)->Arg(5)->Arg(7);
BENCHMARK_CAPTURE(BM_DnSweep, serial, Exec::serial)->Arg(10);
BENCHMARK_CAPTURE(BM_DnSweep, parallel, Exec::parallel)->Arg(10);

BENCHMARK_MAIN();
