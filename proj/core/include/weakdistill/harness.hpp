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
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weakdistill/scenarios.hpp"

namespace weakdistill {

enum class Method { kRejection, kEstimation };

std::string_view method_name(Method m);
// Throws std::invalid_argument for anything but "rejection" / "estimation".
Method parse_method(std::string_view name);

struct ExperimentConfig {
  ScenarioSpec scenario = default_scenario("isotropic");
  // Replay an exported scenario instead of generating one.
  std::optional<std::string> scenario_file;
  std::vector<Method> methods = {Method::kRejection, Method::kEstimation};
  std::vector<std::uint64_t> sample_grid = {0, 10, 100, 1000, 10000, 100000};
  unsigned trials = 20;
  double delta = 0.1;
  std::vector<double> epsilon_grid = {0.1};
  // 0 uses the hardware concurrency.
  unsigned threads = 0;

  // Throws std::invalid_argument when trials == 0, the grid is empty or not
  // strictly increasing, or delta/epsilon are out of range.
  void validate() const;
};

struct TvdRow {
  std::string scenario;
  Method method;
  std::uint64_t n_samples;
  unsigned trial;
  std::uint64_t seed;
  double tvd;
};

struct TvdAggregate {
  std::string scenario;
  Method method;
  std::uint64_t n_samples;
  double mean_tvd;
};

struct TvdCurve {
  std::vector<TvdRow> rows;              // sorted by (scenario, method, n_samples, trial)
  std::vector<TvdAggregate> aggregates;  // sorted by (scenario, method, n_samples)

  // Mean TVD for one method and budget; throws std::out_of_range if absent.
  double mean_tvd(Method m, std::uint64_t n_samples) const;
};

Scenario load_scenario(const ExperimentConfig& cfg);

// Trial t draws from Rng(seed, t). Within a trial the budgets are nested
// prefixes of one signed-sample stream, shared by both methods:
//   rejection:  tvd(p, output_distribution(estimate_ratios(d, N)))
//   estimation: tvd(p, clipped_normalized(estimate_distribution(d, N)))
// A table whose acceptance mass vanishes never emits a sample and is scored
// with tvd 1. N = 0 for the estimation method gives the uniform fallback.
TvdCurve run_experiment(const ExperimentConfig& cfg);
TvdCurve run_experiment(const ExperimentConfig& cfg, const Scenario& scenario);

struct BoundCurvePoint {
  std::string scenario;
  Method method;
  std::uint64_t n_samples;
  double implied_epsilon;
};

// Smallest epsilon in (0, 1] with bound(epsilon) <= n, found by a log-spaced
// scan followed by bisection to a relative 1e-6; 1 when no epsilon qualifies.
double implied_epsilon(const std::function<double(double)>& bound, double n);

// Inverts the tightest bound for each budget at confidence cfg.delta: the
// minimum over all rejection-framework bounds, and the probability-estimation
// bound for the baseline.
std::vector<BoundCurvePoint> bound_curves(const ExperimentConfig& cfg, const Scenario& scenario);

// Floats are printed with 12 significant digits.
std::string format_real(double v);

void write_raw_csv(std::ostream& out, const TvdCurve& curve);
void write_aggregate_csv(std::ostream& out, const TvdCurve& curve);
void write_bound_csv(std::ostream& out, const std::vector<BoundCurvePoint>& points);

}  // namespace weakdistill
