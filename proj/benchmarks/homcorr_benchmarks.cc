// Copyright 2026 The homcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "benchmark/benchmark.h"

#include "homcorr/correlation.h"
#include "homcorr/events.h"
#include "homcorr/fock_oracle.h"
#include "homcorr/modes.h"

using namespace homcorr;

static void BM_correlation_map(benchmark::State &state) {
    AngularGrid grid(static_cast<int>(state.range(0)));
    auto a = make_named_mode(NamedMode::RadialVV);
    auto b = make_named_mode(NamedMode::OamCircular);
    for (auto _ : state) {
        benchmark::DoNotOptimize(correlation_map(a, b, grid, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_correlation_map)->Arg(28)->Arg(360)->Unit(benchmark::kMillisecond);

// Polarization that rotates with r defeats the separable shortcut, so this
// measures the full (r_C, r_D) quadrature.
static void BM_correlation_map_radial_quadrature(benchmark::State &state) {
    AngularGrid grid(28);
    auto envelope = RadialProfile::lg_ring(1.0, 1);
    ModeField a("twist", [](double r, double phi) { return JonesVector{std::cos(phi + r), std::sin(phi + r)}; },
                false, envelope);
    auto b = make_named_mode(NamedMode::OamCircular).with_envelope(envelope);
    MapOptions options;
    options.radial_nodes = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(correlation_map(a, b, grid, grid, {}, options));
    }
}
BENCHMARK(BM_correlation_map_radial_quadrature)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_oracle(benchmark::State &state) {
    AngularGrid grid(static_cast<int>(state.range(0)));
    auto a = make_named_mode(NamedMode::RadialVV);
    auto b = make_named_mode(NamedMode::PiVV);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_correlation_map(a, b, grid));
    }
}
BENCHMARK(BM_oracle)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

namespace {

SimulatedRun sample_run(std::uint64_t pairs) {
    AngularGrid grid(28);
    auto map = correlation_map(make_named_mode(NamedMode::RadialVV), make_named_mode(NamedMode::PiVV), grid, grid);
    SimConfig cfg;
    cfg.pairs = pairs;
    return generate_events(map, Temporal::In, cfg);
}

}  // namespace

static void BM_generate_events(benchmark::State &state) {
    AngularGrid grid(28);
    auto map = correlation_map(make_named_mode(NamedMode::RadialVV), make_named_mode(NamedMode::PiVV), grid, grid);
    SimConfig cfg;
    cfg.pairs = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_events(map, Temporal::In, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_generate_events)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_cluster(benchmark::State &state) {
    auto run = sample_run(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cluster(run.events, 6.0, 10.0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(run.events.size()));
}
BENCHMARK(BM_cluster)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_find_coincidences(benchmark::State &state) {
    auto run = sample_run(static_cast<std::uint64_t>(state.range(0)));
    auto hits = cluster(run.events, 6.0, 10.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_coincidences(hits, 50.0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hits.size()));
}
BENCHMARK(BM_find_coincidences)->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
