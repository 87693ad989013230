// Copyright 2026 The weakdistill Authors
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

#include <benchmark/benchmark.h>

#include "weakdistill/bounds.hpp"
#include "weakdistill/estimation.hpp"
#include "weakdistill/harness.hpp"
#include "weakdistill/scenarios.hpp"
#include "weakdistill/weak_distill.hpp"

namespace weakdistill {
namespace {

const Scenario& scenario(const char* name) {
  static const Scenario dep = build_scenario(default_scenario("depolarizing"));
  static const Scenario iso = build_scenario(default_scenario("isotropic"));
  static const Scenario iqp = build_scenario(default_scenario("iqp"));
  const std::string n = name;
  return n == "depolarizing" ? dep : n == "isotropic" ? iso : iqp;
}

void BM_TallySigned(benchmark::State& state) {
  const auto& d = scenario("isotropic").decomposition;
  Rng rng(1, 0);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tally_signed(d, n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TallySigned)->Arg(1000)->Arg(100000);

void BM_OutputDistribution(benchmark::State& state) {
  const auto& d = scenario("isotropic").decomposition;
  Rng rng(2, 0);
  const WeakSampler s(d, estimate_ratios(d, 10000, rng));
  for (auto _ : state) benchmark::DoNotOptimize(output_distribution(s));
}
BENCHMARK(BM_OutputDistribution);

void BM_EstimateFromCounts(benchmark::State& state) {
  const auto& d = scenario("isotropic").decomposition;
  Rng rng(3, 0);
  const auto counts = tally_signed(d, 10000, rng);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_from_counts(d, counts));
}
BENCHMARK(BM_EstimateFromCounts);

void BM_EvaluateBounds(benchmark::State& state) {
  const auto in = bound_inputs(scenario("iqp").decomposition, 0.1, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_bounds(in));
}
BENCHMARK(BM_EvaluateBounds);

void BM_BuildDepolarizing(benchmark::State& state) {
  const auto spec = default_scenario("depolarizing");
  for (auto _ : state) benchmark::DoNotOptimize(build_scenario(spec));
}
BENCHMARK(BM_BuildDepolarizing);

void BM_BuildIqp(benchmark::State& state) {
  const auto spec = default_scenario("iqp");
  for (auto _ : state) benchmark::DoNotOptimize(build_scenario(spec));
}
BENCHMARK(BM_BuildIqp);

void BM_RunExperimentSmall(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.scenario = default_scenario("iqp");
  cfg.sample_grid = {0, 10, 100, 1000};
  cfg.threads = 1;
  const auto& s = scenario("iqp");
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, s));
}
BENCHMARK(BM_RunExperimentSmall);

}  // namespace
}  // namespace weakdistill

BENCHMARK_MAIN();
