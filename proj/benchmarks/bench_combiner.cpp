#include <random>

#include <benchmark/benchmark.h>

#include "complementarity/combiner.hpp"

namespace {

hmc::PredictionSet predictions(std::size_t n) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    hmc::Vector y(static_cast<Eigen::Index>(n)), h(y.size()), m(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        y[i] = normal(rng);
        h[i] = y[i] + normal(rng);
        m[i] = y[i] + 2.0 * normal(rng);
    }
    return hmc::PredictionSet::with_sequential_ids(y, h, m);
}

void BM_OptimizeMse(benchmark::State& state) {
    const auto p = predictions(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hmc::optimize_weights_mse(p));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OptimizeMse)->Range(64, 1 << 14);

void BM_OptimizeGeneral(benchmark::State& state) {
    const auto p = predictions(static_cast<std::size_t>(state.range(0)));
    const auto spec = hmc::EvaluationSpec::blended(0.5, 0.5, 0.25);
    for (auto _ : state) benchmark::DoNotOptimize(hmc::solve_weights_general(p, spec));
}
BENCHMARK(BM_OptimizeGeneral)->Range(64, 2048)->Unit(benchmark::kMillisecond);

void BM_GridOracle(benchmark::State& state) {
    const auto p = predictions(static_cast<std::size_t>(state.range(0)));
    const auto spec = hmc::EvaluationSpec::rank_weighted(0.5, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(hmc::grid_oracle(p, spec, 0.05));
}
BENCHMARK(BM_GridOracle)->DenseRange(1, 3);

} // namespace
