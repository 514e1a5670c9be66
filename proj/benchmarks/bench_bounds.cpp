#include <benchmark/benchmark.h>

#include "relent/bounds.hpp"
#include "relent/inversion.hpp"

namespace {

void BM_MgfBound(benchmark::State& state) {
    double t = -50.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(relent::mgf_bound(1000, 100, t));
        t = t < 490.0 ? t + 0.37 : -50.0;
    }
}
BENCHMARK(BM_MgfBound);

void BM_UpperTail(benchmark::State& state) {
    double eps = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(relent::upper_tail_bound(1000, 100, eps));
        eps = eps < 1.0 ? eps + 1e-3 : 0.0;
    }
}
BENCHMARK(BM_UpperTail);

void BM_ConfidenceRadius(benchmark::State& state) {
    const auto side = static_cast<relent::Side>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(relent::confidence_radius(1000, 100, 1e-6, side));
}
BENCHMARK(BM_ConfidenceRadius)->Arg(0)->Arg(1)->Arg(2);

void BM_SampleSize(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(relent::sample_size(100, 0.01, 1e-6, relent::Side::Upper));
}
BENCHMARK(BM_SampleSize);

}  // namespace
