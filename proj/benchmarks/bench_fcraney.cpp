#include <benchmark/benchmark.h>

#include <random>

#include "fcraney/fc_density.hpp"
#include "fcraney/ginibre.hpp"
#include "fcraney/hypergeometric.hpp"
#include "fcraney/mellin.hpp"
#include "fcraney/moments.hpp"
#include "fcraney/raney_density.hpp"

namespace {

void BM_series_2f1(benchmark::State& state) {
    const fcraney::HyperGeomParams params{{-1.0 / 6.0, 1.0 / 3.0}, {2.0 / 3.0}};
    const double z = 0.07407407407407407;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcraney::hypergeometric_pfq(params, z));
    }
}
BENCHMARK(BM_series_2f1);

void BM_density_value(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    const fcraney::DensitySpec spec = fcraney::build_fc_spec(s);
    const double x = 0.5 * spec.support_upper;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcraney::density_value(spec, x));
    }
}
BENCHMARK(BM_density_value)->Arg(1)->Arg(3)->Arg(6);

void BM_density_near_edge(benchmark::State& state) {
    const fcraney::DensitySpec spec = fcraney::build_fc_spec(4);
    const double x = spec.support_upper * (1.0 - 2e-3);  // slowest legal series point
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcraney::density_value(spec, x));
    }
}
BENCHMARK(BM_density_near_edge);

void BM_moment(benchmark::State& state) {
    const fcraney::DensityIntegrator integrator(fcraney::build_fc_spec(3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrator.moment(4));
    }
}
BENCHMARK(BM_moment)->Unit(benchmark::kMillisecond);

void BM_convolution(benchmark::State& state) {
    const auto f = fcraney::mellin_from_beta({-0.5, 1.0});
    const auto g = fcraney::mellin_from_beta({-1.0 / 3.0, 0.5});
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcraney::mellin_convolve(f, g));
    }
}
BENCHMARK(BM_convolution)->Unit(benchmark::kMillisecond);

void BM_oracle(benchmark::State& state) {
    const fcraney::DensitySpec spec = fcraney::build_raney_spec(3, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcraney::oracle_density(spec, 512));
    }
}
BENCHMARK(BM_oracle)->Unit(benchmark::kMillisecond);

void BM_product_sample(benchmark::State& state) {
    fcraney::MCConfig config;
    config.s = 2;
    config.matrix_size = static_cast<int>(state.range(0));
    config.samples = 1;
    config.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcraney::product_squared_singular_values(config, 1));
    }
}
BENCHMARK(BM_product_sample)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
