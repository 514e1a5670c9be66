#include <benchmark/benchmark.h>

#include "relent/certify.hpp"
#include "relent/exact.hpp"

namespace {

void BM_EnumerateStatistic(benchmark::State& state) {
    const auto n = state.range(0);
    const auto p = relent::ProbabilityVector::uniform(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(relent::enumerate_statistic(n, p));
    state.counters["compositions"] = relent::composition_count(n, state.range(1));
}
BENCHMARK(BM_EnumerateStatistic)->Args({12, 3})->Args({30, 4})->Args({20, 6})->Unit(benchmark::kMicrosecond);

void BM_ExactCenteredLogMgf(benchmark::State& state) {
    const auto d = relent::enumerate_statistic(30, relent::ProbabilityVector::uniform(4));
    for (auto _ : state) benchmark::DoNotOptimize(relent::exact_centered_log_mgf(d, 3.0));
}
BENCHMARK(BM_ExactCenteredLogMgf);

void BM_CertifyMgfSweep(benchmark::State& state) {
    relent::ExactSweep sweep;
    sweep.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(relent::certify_mgf(sweep));
}
BENCHMARK(BM_CertifyMgfSweep)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_DominanceMargin(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(relent::phi_part_domination_margin(state.range(0), 0.3, relent::Part::Plus));
    }
}
BENCHMARK(BM_DominanceMargin)->Arg(20)->Arg(200);

}  // namespace
