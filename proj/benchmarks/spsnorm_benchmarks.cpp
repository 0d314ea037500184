// Copyright 2026 The sps-norm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "spsnorm/analytic.hpp"
#include "spsnorm/lindblad.hpp"
#include "spsnorm/models.hpp"
#include "spsnorm/sensors.hpp"

namespace {

using namespace spsnorm;

void BM_SteadyStateBlockade(benchmark::State& state) {
  PolaritonParams p;
  p.n_max = static_cast<int>(state.range(0));
  const EmitterPreset e = polariton_blockade(p);
  const Superoperator l = build_liouvillian(e.model);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(l));
  state.counters["unknowns"] = static_cast<double>(l.matrix().rows());
}
BENCHMARK(BM_SteadyStateBlockade)->Arg(4)->Arg(7)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_FilteredLadderIncoherent(benchmark::State& state) {
  const EmitterPreset e = incoherent_2ls(1.0, 1.0);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(filtered_ladder(e, "sigma", k, 2.0, 0.0));
}
BENCHMARK(BM_FilteredLadderIncoherent)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_FilteredLadderBlockade(benchmark::State& state) {
  const EmitterPreset e = make_preset("blockade-unconventional", {});
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(filtered_ladder(e, "a", k, 10.0, e.frame_frequency));
}
BENCHMARK(BM_FilteredLadderBlockade)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_FilteredLadderComposite(benchmark::State& state) {
  const EmitterPreset e = coherent_2ls(1.0, 1.0, 0.0);
  SensorOptions o;
  o.method = SensorSolver::kComposite;
  for (auto _ : state) benchmark::DoNotOptimize(filtered_ladder(e, "sigma", 4, 1.0, 0.0, o));
}
BENCHMARK(BM_FilteredLadderComposite)->Unit(benchmark::kMillisecond);

void BM_ClosedFormDistribution(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_distribution({100.0, 1.0, 10.0}, 40));
}
BENCHMARK(BM_ClosedFormDistribution);

}  // namespace

BENCHMARK_MAIN();
