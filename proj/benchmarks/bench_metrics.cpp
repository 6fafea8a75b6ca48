#include <random>

#include <benchmark/benchmark.h>

#include "complementarity/metrics.hpp"
#include "complementarity/objectives.hpp"

namespace {

hmc::Vector uniform(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u;
    hmc::Vector v(static_cast<Eigen::Index>(n));
    for (auto& x : v) x = u(rng);
    return v;
}

void BM_Metrics(benchmark::State& state) {
    const auto w = hmc::WeightVector::from_human(uniform(static_cast<std::size_t>(state.range(0)), 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hmc::c_across(w));
        benchmark::DoNotOptimize(hmc::c_within(w));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Metrics)->Range(64, 1 << 16);

void BM_RankWeightedObjective(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const hmc::Objective obj(hmc::EvaluationSpec::blended(0.5, 0.5, 0.5), n);
    const auto preds = uniform(n, 2);
    const auto y = uniform(n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(obj(preds, y));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RankWeightedObjective)->Range(64, 1 << 16);

} // namespace
