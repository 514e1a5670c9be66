#include <benchmark/benchmark.h>

#include "relent/montecarlo.hpp"
#include "relent/random.hpp"

namespace {

// Mean n p below 10 takes the inversion path, above it BTRS.
void BM_SampleBinomial(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const double p = 0.01 * static_cast<double>(state.range(1));
    const relent::LogFactorialTable lf(n);
    relent::RandomStream stream(1);
    for (auto _ : state) benchmark::DoNotOptimize(relent::sample_binomial(stream, n, p, lf));
}
BENCHMARK(BM_SampleBinomial)->Args({100, 5})->Args({1000, 1})->Args({1000, 30})->Args({100000, 50});

void BM_MultinomialDraw(benchmark::State& state) {
    const relent::MultinomialSampler sampler(1000, relent::ProbabilityVector::uniform(state.range(0)));
    relent::RandomStream stream(2);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        sampler.draw(stream, counts);
        benchmark::DoNotOptimize(counts.data());
    }
}
BENCHMARK(BM_MultinomialDraw)->Arg(10)->Arg(100);

void BM_SimulateStatistic(benchmark::State& state) {
    const auto p = relent::ProbabilityVector::uniform(100);
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(relent::simulate_statistic(1000, p, 50'000, 42, threads));
    state.SetItemsProcessed(state.iterations() * 50'000);
}
BENCHMARK(BM_SimulateStatistic)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace
