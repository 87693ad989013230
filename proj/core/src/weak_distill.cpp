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
#include "weakdistill/weak_distill.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weakdistill/errors.hpp"

namespace weakdistill {

namespace {

constexpr double kMinAcceptanceMass = 1e-12;

std::vector<double> clipped_ratios(const std::vector<std::uint64_t>& plus,
                                   const std::vector<std::uint64_t>& minus) {
  std::vector<double> ratios(plus.size(), 1.0);
  for (std::size_t x = 0; x < plus.size(); ++x) {
    const std::uint64_t visits = plus[x] + minus[x];
    if (visits == 0) continue;
    if (minus[x] >= plus[x]) {
      ratios[x] = 0.0;
    } else {
      ratios[x] = static_cast<double>(plus[x] - minus[x]) / static_cast<double>(visits);
    }
  }
  return ratios;
}

}  // namespace

void extend_tally(const QuasiDecomposition& d, std::uint64_t extra, Rng& rng,
                  SignedCounts& counts) {
  if (counts.plus.empty()) {
    counts.plus.assign(d.size(), 0);
    counts.minus.assign(d.size(), 0);
  }
  if (counts.plus.size() != d.size() || counts.minus.size() != d.size()) {
    throw std::invalid_argument("extend_tally: dimension mismatch");
  }
  for (std::uint64_t i = 0; i < extra; ++i) {
    const SignedSample s = draw_signed(d, rng);
    ++(s.sign > 0 ? counts.plus : counts.minus)[s.outcome.index];
  }
  counts.total += extra;
}

SignedCounts tally_signed(const QuasiDecomposition& d, std::uint64_t n, Rng& rng) {
  SignedCounts counts;
  extend_tally(d, n, rng, counts);
  return counts;
}

AcceptanceTable::AcceptanceTable(std::vector<std::uint64_t> counts_plus,
                                 std::vector<std::uint64_t> counts_minus)
    : counts_plus_(std::move(counts_plus)), counts_minus_(std::move(counts_minus)) {
  if (counts_plus_.size() != counts_minus_.size()) {
    throw std::invalid_argument("AcceptanceTable: count vectors differ in length");
  }
  bits_for_size(counts_plus_.size());
  ratios_ = clipped_ratios(counts_plus_, counts_minus_);
  for (std::size_t x = 0; x < counts_plus_.size(); ++x) {
    n_samples_used_ += counts_plus_[x] + counts_minus_[x];
  }
}

AcceptanceTable::AcceptanceTable(SignedCounts counts)
    : AcceptanceTable(std::move(counts.plus), std::move(counts.minus)) {}

double AcceptanceTable::unclipped_ratio(std::size_t x) const {
  const std::uint64_t visits = counts_plus_[x] + counts_minus_[x];
  if (visits == 0) return 1.0;
  return (static_cast<double>(counts_plus_[x]) - static_cast<double>(counts_minus_[x])) /
         static_cast<double>(visits);
}

void to_json(nlohmann::json& j, const AcceptanceTable& table) {
  j = nlohmann::json{
      {"n_samples_used", table.n_samples_used()},
      {"counts_plus", table.counts_plus()},
      {"counts_minus", table.counts_minus()},
      {"ratios", table.ratios()},
  };
}

RatioError ratio_error(const QuasiDecomposition& d, const AcceptanceTable& table) {
  if (table.size() != d.size()) throw std::invalid_argument("ratio_error: dimension mismatch");
  const auto ideal = ideal_ratios(d);
  RatioError err;
  err.eps.resize(d.size());
  err.eps_prime.resize(d.size());
  for (std::size_t x = 0; x < d.size(); ++x) {
    err.eps[x] = ideal[x] - table.ratios()[x];
    err.eps_prime[x] = ideal[x] - table.unclipped_ratio(x);
  }
  return err;
}

WeakSampler::WeakSampler(QuasiDecomposition decomposition, AcceptanceTable table)
    : decomposition_(std::move(decomposition)),
      table_(std::move(table)),
      proposal_(mixture(decomposition_)) {
  if (table_.size() != decomposition_.size()) {
    throw std::invalid_argument("WeakSampler: table and decomposition differ in dimension");
  }
}

AcceptanceTable estimate_ratios(const QuasiDecomposition& d, std::uint64_t n, Rng& rng) {
  return AcceptanceTable(tally_signed(d, n, rng));
}

std::vector<double> ideal_ratios(const QuasiDecomposition& d) {
  const SignedDistribution p = target(d);
  if (!p.is_physical()) {
    throw std::domain_error("ideal_ratios: decomposition is not physical");
  }
  const DiscreteDistribution q = mixture(d);
  const double k = d.gamma();
  std::vector<double> ratios(d.size(), 0.0);
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (q[x] <= 0.0) continue;
    ratios[x] = std::clamp(std::max(p[x], 0.0) / (k * q[x]), 0.0, 1.0);
  }
  return ratios;
}

RejectionResult run_rejection(const WeakSampler& s, std::uint64_t max_attempts, Rng& rng) {
  if (max_attempts == 0) throw std::invalid_argument("run_rejection: max_attempts must be positive");
  const auto& ratios = s.table().ratios();
  RejectionResult result;
  while (result.attempts < max_attempts) {
    ++result.attempts;
    const Outcome x = s.proposal().sample(rng);
    if (rng.bernoulli(ratios[x.index])) {
      result.outcome = x;
      return result;
    }
  }
  return result;
}

double acceptance_probability(const DiscreteDistribution& proposal,
                              std::span<const double> ratios) {
  if (ratios.size() != proposal.size()) {
    throw std::invalid_argument("acceptance_probability: dimension mismatch");
  }
  double mass = 0.0;
  for (std::size_t x = 0; x < ratios.size(); ++x) mass += ratios[x] * proposal[x];
  return mass;
}

DiscreteDistribution output_distribution(const DiscreteDistribution& proposal,
                                         std::span<const double> ratios) {
  const double mass = acceptance_probability(proposal, ratios);
  if (!(mass > kMinAcceptanceMass)) {
    throw NumericalError("output_distribution: acceptance mass vanishes");
  }
  // Uniform acceptance leaves the proposal untouched; skip the rounding.
  if (std::all_of(ratios.begin(), ratios.end(), [&](double r) { return r == ratios[0]; })) {
    return proposal;
  }
  std::vector<double> out(ratios.size());
  for (std::size_t x = 0; x < ratios.size(); ++x) out[x] = ratios[x] * proposal[x] / mass;
  return DiscreteDistribution(std::move(out));
}

DiscreteDistribution output_distribution(const WeakSampler& s) {
  return output_distribution(s.proposal(), s.table().ratios());
}

double weighted_ratio_error(const QuasiDecomposition& d, std::span<const double> ratios) {
  if (ratios.size() != d.size()) {
    throw std::invalid_argument("weighted_ratio_error: dimension mismatch");
  }
  const auto ideal = ideal_ratios(d);
  const DiscreteDistribution q = mixture(d);
  double acc = 0.0;
  for (std::size_t x = 0; x < d.size(); ++x) acc += std::abs(ideal[x] - ratios[x]) * q[x];
  return d.gamma() * acc;
}

double tvd_error_bound(const QuasiDecomposition& d, std::span<const double> ratios) {
  const double a = weighted_ratio_error(d, ratios);
  if (a >= 1.0) return kDivergentBound;
  return a / (1.0 - a);
}

double tvd_error_bound(const QuasiDecomposition& d, const AcceptanceTable& table) {
  return tvd_error_bound(d, table.ratios());
}

double retry_budget_real(double gamma, double c_minus, double epsilon, double delta2) {
  if (!(gamma >= 1.0) || !(c_minus >= 0.0) || !(epsilon > 0.0)) {
    throw std::invalid_argument("retry_budget: need gamma >= 1, c_minus >= 0, epsilon > 0");
  }
  if (!(delta2 > 0.0 && delta2 < 1.0)) {
    throw std::invalid_argument("retry_budget: delta2 must lie in (0, 1)");
  }
  const double ratio = (1.0 + epsilon) * gamma / ((1.0 + epsilon) * c_minus + epsilon * gamma);
  if (!(ratio > 1.0)) {
    throw NumericalError("retry_budget: acceptance bound is vacuous for this epsilon");
  }
  return std::log(1.0 / delta2) / std::log(ratio);
}

std::uint64_t retry_budget(double gamma, double c_minus, double epsilon, double delta2) {
  const double m = std::ceil(retry_budget_real(gamma, c_minus, epsilon, delta2));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m));
}

}  // namespace weakdistill
