// Serial reference vs OpenMP for each parallel kernel.
#include <benchmark/benchmark.h>

#include <vector>

#include "pdc/acquisition.hpp"
#include "pdc/analysis.hpp"
#include "pdc/fixtures.hpp"
#include "pdc/sampling_sim.hpp"
#include "pdc/spectral_model.hpp"
#include "pdc/time_domain.hpp"

using namespace pdc;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_BuildJsa(benchmark::State& state) {
    const SourceSpec src = fixtures::correlated_source(static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(build_jsa(src, exec_of(state)));
}
BENCHMARK(BM_BuildJsa)->ArgsProduct({{0, 1}, {256, 512, 1024}})->Unit(benchmark::kMillisecond);

void BM_GateTable(benchmark::State& state) {
    const GateResponse response(transform_limited_gaussian(2000.0, 4.0, 4096), GateSpec{});
    for (auto _ : state) benchmark::DoNotOptimize(tabulate_response(response, 1.0, exec_of(state)));
}
BENCHMARK(BM_GateTable)->ArgsProduct({{0, 1}})->Unit(benchmark::kMillisecond);

void BM_Histogram(benchmark::State& state) {
    AcquisitionParams p;
    p.peak_rate_hz = 2e6;
    p.duration_s = 1.0;
    const EventStream stream =
        simulate_acquisition(transform_limited_gaussian(2000.0, 4.0, 4096), GateSpec{}, PlateSpec{}, p).stream;
    for (auto _ : state)
        benchmark::DoNotOptimize(reconstruct_waveform(stream, PlateSpec{}, 1000, channel::converted, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream.records.size()));
}
BENCHMARK(BM_Histogram)->ArgsProduct({{0, 1}})->Unit(benchmark::kMillisecond);

void BM_ChirpSweep(benchmark::State& state) {
    const SourceSpec src = fixtures::decorrelated_source(256);
    const std::vector<double> chirps{0.0, 5000.0, 10000.0, 20000.0, 30000.0, 40000.0, 50000.0, 60000.0};
    for (auto _ : state) benchmark::DoNotOptimize(chirp_sweep(src, chirps, exec_of(state)));
}
BENCHMARK(BM_ChirpSweep)->ArgsProduct({{0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
