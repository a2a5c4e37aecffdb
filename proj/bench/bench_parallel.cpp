#include <benchmark/benchmark.h>

#include "parityscope/parallel.hpp"
#include "parityscope/spectral_oracle.hpp"
#include "parityscope/sweep.hpp"

using namespace pscope;

namespace {

std::vector<ChiPair> sweep_points() { return diagonal_cut(linspace(0.2, 1.0, 8)); }

ChargeBasisConfig charge_config() {
    ChargeBasisConfig cfg;
    cfg.interaction = -0.5;
    cfg.n_max = 10;
    return cfg;
}

void BM_ChiSweepSerial(benchmark::State& state) {
    const auto points = sweep_points();
    for (auto _ : state) benchmark::DoNotOptimize(chi_sweep_serial(points, SweepSettings{}));
}

void BM_ChiSweepParallel(benchmark::State& state) {
    WorkerScope scope(static_cast<int>(state.range(0)));
    const auto points = sweep_points();
    for (auto _ : state) benchmark::DoNotOptimize(chi_sweep(points, SweepSettings{}));
}

void BM_ChargeDispersionSerial(benchmark::State& state) {
    const ChargeBasisConfig cfg = charge_config();
    for (auto _ : state) benchmark::DoNotOptimize(charge_dispersion_serial(cfg, 4, 5));
}

void BM_ChargeDispersionParallel(benchmark::State& state) {
    WorkerScope scope(static_cast<int>(state.range(0)));
    const ChargeBasisConfig cfg = charge_config();
    for (auto _ : state) benchmark::DoNotOptimize(charge_dispersion(cfg, 4, 5));
}

} // namespace

BENCHMARK(BM_ChiSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChiSweepParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ChargeDispersionSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChargeDispersionParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
