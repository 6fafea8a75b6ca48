#include <benchmark/benchmark.h>

#include "complementarity/fitting.hpp"
#include "complementarity/synthgen.hpp"

namespace {

hmc::Dataset data(std::size_t n) {
    hmc::DgpConfig cfg;
    cfg.n = n;
    cfg.seed = 11;
    return hmc::generate_dataset(cfg);
}

void BM_GenerateDataset(benchmark::State& state) {
    hmc::DgpConfig cfg;
    cfg.n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hmc::generate_dataset(cfg));
}
BENCHMARK(BM_GenerateDataset)->Arg(2000)->Arg(8000);

void BM_FitOls(benchmark::State& state) {
    const auto d = data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hmc::fit_ols(d.features, d.target));
}
BENCHMARK(BM_FitOls)->Arg(2000)->Arg(8000);

void BM_FitRankWeighted(benchmark::State& state) {
    const auto d = data(static_cast<std::size_t>(state.range(0)));
    const auto view = hmc::FeatureView::all(10);
    for (auto _ : state) benchmark::DoNotOptimize(hmc::fit_rank_weighted(d.features, d.target, view, 0.5, 0.5));
}
BENCHMARK(BM_FitRankWeighted)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

} // namespace
