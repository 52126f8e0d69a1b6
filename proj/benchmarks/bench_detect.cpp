// Micro-benchmarks for the hot paths: per-interval contrast evaluation, the
// full interval schedule, and the end-to-end detector at published scale.
// Not part of the test suite; build and run manually.

#include <benchmark/benchmark.h>

#include "mid/contrast.hpp"
#include "mid/detect.hpp"
#include "mid/eval.hpp"
#include "mid/preprocess.hpp"

namespace {

mid::MultiSeries make_panel(long T, long d, long N, mid::Scenario sc, std::uint64_t seed) {
    mid::SignalSpec spec;
    spec.T = T;
    spec.d = d;
    spec.scenario = sc;
    spec.changepoints = mid::equally_spaced_changepoints(T, N);
    spec.sparsity = 0.5;
    spec.rng_seed = seed;
    return mid::generate_signal(spec).first;
}

void BM_contrast_matrix(benchmark::State& state) {
    const long T = state.range(0);
    const auto panel = make_panel(T, 30, 3, mid::Scenario::PiecewiseConstant, 7);
    for (auto _ : state) {
        auto m = mid::contrast_matrix(panel, {1, T}, mid::Scenario::PiecewiseConstant);
        benchmark::DoNotOptimize(m.values.data());
    }
}
BENCHMARK(BM_contrast_matrix)->Arg(300)->Arg(1500);

void BM_schedule_scan(benchmark::State& state) {
    const long T = state.range(0);
    const auto panel = make_panel(T, 30, 3, mid::Scenario::PiecewiseConstant, 7);
    for (auto _ : state) {
        double m = mid::max_schedule_statistic(panel, mid::Scenario::PiecewiseConstant,
                                               mid::NormKind::LInf, 10);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_schedule_scan)->Arg(700)->Arg(1500);

void BM_detect_auto(benchmark::State& state) {
    const long d = state.range(0);
    const auto panel = make_panel(1500, d, 50, mid::Scenario::PiecewiseConstant, 7);
    std::vector<long> degenerate;
    const auto sigma = mid::estimate_sigma_mad_lenient(panel, mid::Scenario::PiecewiseConstant,
                                                       degenerate);
    const auto normalized = mid::normalize(panel, sigma);
    mid::DetectionConfig cfg;
    cfg.norm = mid::NormPolicy::Auto;
    for (auto _ : state) {
        auto report = mid::run_detection(normalized, cfg);
        benchmark::DoNotOptimize(report.changepoints.data());
    }
}
BENCHMARK(BM_detect_auto)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
