#include <benchmark/benchmark.h>

#include "sfncov/montecarlo.hpp"
#include "sfncov/units.hpp"
#include "../tests/support/test_support.hpp"

namespace {

void SampleInterferers(benchmark::State& state) {
    const auto s = testsup::urban_scenario(2e-6);
    auto rng = sfncov::substream_engine(1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sfncov::sample_interferers(s.interference(), rng));
}
BENCHMARK(SampleInterferers);

void SinrTrial(benchmark::State& state) {
    const auto s = testsup::urban_scenario(2e-6);
    auto rng = sfncov::substream_engine(2, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sfncov::simulate_sinr_once(s, rng));
}
BENCHMARK(SinrTrial);

void EstimateOutage(benchmark::State& state) {
    const auto s = testsup::urban_scenario(2e-6);
    const double theta = sfncov::db_to_linear(10.0);
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sfncov::estimate_outage(s, theta, {trials, 42, {}, 0}).mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(EstimateOutage)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
