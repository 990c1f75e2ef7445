#include <benchmark/benchmark.h>

#include "edyn/catalog.hpp"
#include "edyn/instability.hpp"
#include "edyn/inverse_branch.hpp"
#include "edyn/raster.hpp"
#include "edyn/scans.hpp"

namespace {

void BM_Evaluate(benchmark::State& state) {
    const auto f1 = edyn::EntireMap::f1();
    edyn::cplx z{0.3, 0.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(f1.evaluate(z));
        z += edyn::cplx{1e-9, 0.0};
    }
}
BENCHMARK(BM_Evaluate);

void BM_EtaScan(benchmark::State& state) {
    const auto map = edyn::EntireMap::lambda_exp(0.25);
    edyn::SamplerConfig sampler;
    sampler.workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(edyn::eta_scan(map, {1e2, 1e4, 1e8}, sampler));
    }
}
BENCHMARK(BM_EtaScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ContinueBranch(benchmark::State& state) {
    const auto map = edyn::EntireMap::model_f1();
    for (auto _ : state) {
        benchmark::DoNotOptimize(edyn::continue_branch(map, 1.0, 10.0));
    }
}
BENCHMARK(BM_ContinueBranch)->Unit(benchmark::kMillisecond);

void BM_Tracts(benchmark::State& state) {
    const auto map = edyn::EntireMap::lambda_exp(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(edyn::discs_of_univalence(map, 0.0, edyn::Disc{0.0, 0.1}, 8));
    }
}
BENCHMARK(BM_Tracts)->Unit(benchmark::kMillisecond);

void BM_Instability(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(edyn::find_instability_parameter(1, 1000, 0.01));
    }
}
BENCHMARK(BM_Instability)->Unit(benchmark::kMillisecond);

void BM_Render(benchmark::State& state) {
    edyn::RasterConfig config;
    config.map = edyn::EntireMap::f3();
    config.classifier = edyn::Classifier::DriftCompensatedBasins;
    config.width = static_cast<int>(state.range(0));
    config.height = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(edyn::render_raster(config));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Render)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
