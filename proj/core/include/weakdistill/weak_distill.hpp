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
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "weakdistill/distributions.hpp"
#include "weakdistill/quasiprob.hpp"
#include "weakdistill/rng.hpp"

namespace weakdistill {

// Per-outcome tallies of signed draws, N+_x and N-_x.
struct SignedCounts {
  std::vector<std::uint64_t> plus;
  std::vector<std::uint64_t> minus;
  std::uint64_t total = 0;
};

// n independent draw_signed calls, tallied by outcome and sign. Both the
// rejection framework and the estimation baseline consume this tally, so one
// Rng stream gives paired samples for the two methods.
SignedCounts tally_signed(const QuasiDecomposition& d, std::uint64_t n, Rng& rng);

// Appends extra draws to an existing tally, so that tallies for increasing
// budgets are nested prefixes of one stream.
void extend_tally(const QuasiDecomposition& d, std::uint64_t extra, Rng& rng,
                  SignedCounts& counts);

// Acceptance ratios estimated from signed counts:
//   R_x = 1                                   if N+_x + N-_x == 0
//   R_x = max(0, (N+_x - N-_x)/(N+_x + N-_x))  otherwise.
class AcceptanceTable {
 public:
  AcceptanceTable(std::vector<std::uint64_t> counts_plus,
                  std::vector<std::uint64_t> counts_minus);
  explicit AcceptanceTable(SignedCounts counts);

  const std::vector<std::uint64_t>& counts_plus() const { return counts_plus_; }
  const std::vector<std::uint64_t>& counts_minus() const { return counts_minus_; }
  const std::vector<double>& ratios() const { return ratios_; }
  std::uint64_t n_samples_used() const { return n_samples_used_; }
  std::size_t size() const { return ratios_.size(); }

  // (N+_x - N-_x)/(N+_x + N-_x) before clipping; 1 for unvisited outcomes.
  double unclipped_ratio(std::size_t x) const;

 private:
  std::vector<std::uint64_t> counts_plus_;
  std::vector<std::uint64_t> counts_minus_;
  std::vector<double> ratios_;
  std::uint64_t n_samples_used_ = 0;
};

void to_json(nlohmann::json& j, const AcceptanceTable& table);

// Ratio errors against the ideal p_x/(K q_x): eps is measured from the clipped
// R_x, eps_prime from the unclipped ratio.
struct RatioError {
  std::vector<double> eps;
  std::vector<double> eps_prime;
};

RatioError ratio_error(const QuasiDecomposition& d, const AcceptanceTable& table);

// A decomposition paired with estimated acceptance ratios, K fixed to gamma.
class WeakSampler {
 public:
  WeakSampler(QuasiDecomposition decomposition, AcceptanceTable table);

  const QuasiDecomposition& decomposition() const { return decomposition_; }
  const AcceptanceTable& table() const { return table_; }
  const DiscreteDistribution& proposal() const { return proposal_; }
  double k_constant() const { return decomposition_.gamma(); }

 private:
  QuasiDecomposition decomposition_;
  AcceptanceTable table_;
  DiscreteDistribution proposal_;
};

AcceptanceTable estimate_ratios(const QuasiDecomposition& d, std::uint64_t n, Rng& rng);

// p_x/(gamma q_x), 0 where q_x == 0. Throws std::domain_error when the target
// has an entry below -1e-9.
std::vector<double> ideal_ratios(const QuasiDecomposition& d);

struct RejectionResult {
  std::optional<Outcome> outcome;  // empty when every attempt was rejected
  std::uint64_t attempts = 0;
};

// Draw from the mixture and accept with probability R_x, at most max_attempts
// times.
RejectionResult run_rejection(const WeakSampler& s, std::uint64_t max_attempts, Rng& rng);

// Law of an accepted sample, R_x q_x / sum_y R_y q_y. Throws NumericalError
// when the acceptance mass is at most 1e-12.
DiscreteDistribution output_distribution(const WeakSampler& s);
DiscreteDistribution output_distribution(const DiscreteDistribution& proposal,
                                         std::span<const double> ratios);

// Per-attempt acceptance probability sum_x R_x q_x.
double acceptance_probability(const DiscreteDistribution& proposal,
                              std::span<const double> ratios);

inline constexpr double kDivergentBound = std::numeric_limits<double>::infinity();

// Upper bound on tvd(p, output_distribution):
//   A / (1 - A),  A = K sum_x |eps_x| q_x,
// or kDivergentBound when A >= 1.
double tvd_error_bound(const QuasiDecomposition& d, const AcceptanceTable& table);
double tvd_error_bound(const QuasiDecomposition& d, std::span<const double> ratios);

// Weighted ratio error A = K sum_x |eps_x| q_x for arbitrary ratios.
double weighted_ratio_error(const QuasiDecomposition& d, std::span<const double> ratios);

// Smallest M with (c_minus/gamma + eps/(1+eps))^M <= delta2:
//   M = ceil( ln(1/delta2) / ln((1+eps) gamma / ((1+eps) c_minus + eps gamma)) ),
// never below 1. Throws NumericalError when the inner log argument is <= 1.
std::uint64_t retry_budget(double gamma, double c_minus, double epsilon, double delta2);

// Same quantity before the ceiling.
double retry_budget_real(double gamma, double c_minus, double epsilon, double delta2);

}  // namespace weakdistill
