#include <benchmark/benchmark.h>

#include "fa/matrix_fa.hpp"
#include "fa/scalar_discrete.hpp"
#include "fa/sweep.hpp"

namespace {

void BM_ScalarSweep(benchmark::State& state) {
    fa::sweep::ScalarSweepConfig cfg;
    cfg.runs = 32;
    cfg.t_end = 10.0;
    const bool parallel = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(fa::sweep::scalar_random_sweep(cfg, parallel));
    state.SetLabel(parallel ? "openmp" : "serial");
}
BENCHMARK(BM_ScalarSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Autoencoder(benchmark::State& state) {
    fa::matrix::AutoencoderConfig cfg;
    cfg.steps = 500;
    cfg.repeats = 4;
    const auto seeds = fa::matrix::default_seeds(cfg.seed, cfg.repeats);
    const bool parallel = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(fa::matrix::autoencoder_experiment(cfg, seeds, parallel));
    state.SetLabel(parallel ? "openmp" : "serial");
}
BENCHMARK(BM_Autoencoder)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EulerRun(benchmark::State& state) {
    const double eta = 0.9 * fa::discrete::euler_budget_provisional(1.0, 1.0).eta_max;
    for (auto _ : state) benchmark::DoNotOptimize(fa::discrete::euler_run(1.0, 1.0, eta, 100000, 100));
}
BENCHMARK(BM_EulerRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
