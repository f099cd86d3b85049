// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "leosim/access.hpp"
#include "leosim/mimo.hpp"
#include "leosim/orbits.hpp"
#include "leosim/topology.hpp"

using namespace leosim;

namespace {

ConstellationConfig shape(int p, int n) {
  ConstellationConfig c;
  c.num_planes = p;
  c.sats_per_plane = n;
  return c;
}

void BM_Propagate(benchmark::State& state) {
  const auto c = shape(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(c, t));
    t += 5.0;
  }
  state.SetItemsProcessed(state.iterations() * c.num_satellites());
}
BENCHMARK(BM_Propagate)->Args({7, 20})->Args({12, 40});

void BM_GreedyMatch(benchmark::State& state) {
  const auto c = shape(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto isl = LinkBudgetConfig{}.params(LinkClass::Isl);
  const auto st = propagate(c, 1234.0);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_match(c, st, isl));
}
BENCHMARK(BM_GreedyMatch)->Args({7, 20})->Args({12, 40});

void BM_Allocate(benchmark::State& state) {
  const auto c = shape(7, 20);
  const auto series = simulate_snapshots(c, LinkBudgetConfig{}.params(LinkClass::Isl), 60.0, 10.0, 1, true);
  const AccessWorkspace ws(c, LinkBudgetConfig{}, series);
  const auto p = ws.problem(0);
  const auto scheme = AccessScheme::ofdma(static_cast<int>(state.range(0)), 400e6);
  for (auto _ : state) benchmark::DoNotOptimize(allocate(p, scheme));
}
BENCHMARK(BM_Allocate)->Arg(1)->Arg(3)->Arg(8);

void BM_BuildChannel(benchmark::State& state) {
  MimoScenario s;
  s.num_satellites = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_channel(s));
}
BENCHMARK(BM_BuildChannel)->Arg(1)->Arg(6);

void BM_MimoSweep(benchmark::State& state) {
  const MimoScenario s;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_rates(s));
}
BENCHMARK(BM_MimoSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
