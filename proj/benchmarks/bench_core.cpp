#include "markovpi/bandwidth.hpp"
#include "markovpi/bootstrap.hpp"
#include "markovpi/cdf.hpp"
#include "markovpi/conformal.hpp"
#include "markovpi/simulation.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace markovpi;

TimeSeriesSample sample(std::size_t n) {
    DgpSpec spec;
    spec.n = n;
    spec.seed = 11;
    return simulate(spec);
}

void BM_Estimate(benchmark::State& state) {
    const auto series = sample(static_cast<std::size_t>(state.range(0)));
    const EmbeddedPairs pairs = embed(series, 1);
    const ConditionalCdfModel model(pairs, rule_of_thumb(series.size(), 1, series.sample_sd()));
    const double x = 0.3;
    for (auto _ : state) benchmark::DoNotOptimize(estimate(model, {&x, 1}, 0.5));
}
BENCHMARK(BM_Estimate)->Arg(100)->Arg(1000);

void BM_Invert(benchmark::State& state) {
    const auto series = sample(static_cast<std::size_t>(state.range(0)));
    const EmbeddedPairs pairs = embed(series, 1);
    const ConditionalCdfModel model(pairs, rule_of_thumb(series.size(), 1, series.sample_sd()));
    const double x = 0.3;
    for (auto _ : state) benchmark::DoNotOptimize(invert(model, {&x, 1}, 0.77));
}
BENCHMARK(BM_Invert)->Arg(100)->Arg(1000);

void BM_CvSelect(benchmark::State& state) {
    const auto series = sample(static_cast<std::size_t>(state.range(0)));
    const EmbeddedPairs pairs = embed(series, 1);
    const auto grid = default_grid(series.size(), 1, series.sample_sd());
    for (auto _ : state) benchmark::DoNotOptimize(cv_select(pairs, grid));
}
BENCHMARK(BM_CvSelect)->Arg(100)->Arg(250)->Unit(benchmark::kMillisecond);

void BM_ConformalInterval(benchmark::State& state) {
    const auto series = sample(static_cast<std::size_t>(state.range(0)));
    const EmbeddedPairs pairs = embed(series, 1);
    const Bandwidths bw = rule_of_thumb(series.size(), 1, series.sample_sd());
    const auto x_n = last_predictor(series, 1);
    const TrialGrid grid = build_trial_grid(series, 200);
    for (auto _ : state) {
        benchmark::DoNotOptimize(conformal_interval(pairs, bw, x_n, grid, NominalLevel(0.1), false));
    }
}
BENCHMARK(BM_ConformalInterval)->Arg(100)->Arg(250)->Unit(benchmark::kMillisecond);

void BM_MfInterval(benchmark::State& state) {
    const auto series = sample(100);
    const EmbeddedPairs pairs = embed(series, 1);
    const Bandwidths bw = rule_of_thumb(series.size(), 1, series.sample_sd());
    const auto x_n = last_predictor(series, 1);
    const BootstrapConfig cfg{static_cast<std::size_t>(state.range(0)), 100, 42, 1};
    const bool predictive = state.range(1) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(mf_interval(pairs, bw, x_n, NominalLevel(0.1), cfg, predictive));
}
BENCHMARK(BM_MfInterval)->Args({50, 0})->Args({50, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
