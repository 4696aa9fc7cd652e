#include <benchmark/benchmark.h>

#include <random>

#include "sfncov/hypoexp.hpp"
#include "sfncov/laplace.hpp"
#include "sfncov/outage.hpp"
#include "sfncov/units.hpp"
#include "../tests/support/test_support.hpp"

namespace {

void OutageRepeatedMeans(benchmark::State& state) {
    const auto s = testsup::urban_scenario(2e-6);
    const double theta = sfncov::db_to_linear(10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sfncov::outage_probability(s, theta).probability);
}
BENCHMARK(OutageRepeatedMeans);

void OutageDistinctMeans(benchmark::State& state) {
    const auto s = testsup::urban_scenario(2e-6).with_station_powers({10.0, 20.0, 30.0});
    const double theta = sfncov::db_to_linear(10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sfncov::outage_probability(s, theta).probability);
}
BENCHMARK(OutageDistinctMeans);

void HypoexpCdf(benchmark::State& state) {
    sfncov::HypoexpSpec spec;
    for (int g = 0; g < state.range(0); ++g) {
        spec.means.push_back(1e-5 * (g + 1));
        spec.multiplicities.push_back(g % 2 ? 2 : 1);
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(sfncov::hypoexp_cdf(spec, 3e-5));
}
BENCHMARK(HypoexpCdf)->Arg(1)->Arg(3)->Arg(6);

void LaplaceTransform(benchmark::State& state) {
    const auto params =
        sfncov::LaplaceParams::from_scenario(testsup::urban_scenario(2e-6));
    double s = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sfncov::laplace_interference(params, s));
        s = s < 1e9 ? s * 1.1 : 1.0;
    }
}
BENCHMARK(LaplaceTransform);

void OmegaDerivative(benchmark::State& state) {
    const auto params =
        sfncov::LaplaceParams::from_scenario(testsup::urban_scenario(2e-6));
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(sfncov::omega_derivative(params, 0.8, 150.0, order));
}
BENCHMARK(OmegaDerivative)->Arg(1)->Arg(4)->Arg(8);

} // namespace

BENCHMARK_MAIN();
