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
#include "weakdistill/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace weakdistill {

DiscreteDistribution clip_and_normalize(std::span<const double> raw) {
  std::vector<double> clipped(raw.size());
  double total = 0.0;
  for (std::size_t x = 0; x < raw.size(); ++x) {
    clipped[x] = raw[x] > 0.0 ? raw[x] : 0.0;
    total += clipped[x];
  }
  if (!(total > 0.0)) return DiscreteDistribution::uniform(bits_for_size(raw.size()));
  for (double& v : clipped) v /= total;
  return DiscreteDistribution(std::move(clipped));
}

EmpiricalSignedEstimate estimate_from_counts(const QuasiDecomposition& d,
                                             const SignedCounts& counts) {
  if (counts.plus.size() != d.size() || counts.minus.size() != d.size()) {
    throw std::invalid_argument("estimate_from_counts: dimension mismatch");
  }
  std::vector<double> raw(d.size(), 0.0);
  if (counts.total > 0) {
    const double scale = d.gamma() / static_cast<double>(counts.total);
    for (std::size_t x = 0; x < raw.size(); ++x) {
      raw[x] = scale * (static_cast<double>(counts.plus[x]) -
                        static_cast<double>(counts.minus[x]));
    }
  }
  auto clipped = clip_and_normalize(raw);
  return EmpiricalSignedEstimate{std::move(raw), std::move(clipped), counts.total};
}

EmpiricalSignedEstimate estimate_distribution(const QuasiDecomposition& d, std::uint64_t n,
                                              Rng& rng) {
  if (n == 0) throw std::invalid_argument("estimate_distribution: n must be positive");
  return estimate_from_counts(d, tally_signed(d, n, rng));
}

Outcome sample_from_estimate(const EmpiricalSignedEstimate& e, Rng& rng) {
  return e.clipped_normalized.sample(rng);
}

namespace {

void check_observable(const QuasiDecomposition& d, std::span<const double> observable) {
  if (observable.size() != d.size()) {
    throw std::invalid_argument("observable length does not match the decomposition");
  }
  for (double v : observable) {
    if (!(v >= -0.5 && v <= 0.5)) {
      throw std::invalid_argument("observable entries must lie in [-1/2, 1/2]");
    }
  }
}

}  // namespace

double estimate_expectation(const QuasiDecomposition& d, std::span<const double> observable,
                            std::uint64_t n, Rng& rng) {
  check_observable(d, observable);
  if (n == 0) throw std::invalid_argument("estimate_expectation: n must be positive");
  double acc = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const SignedSample s = draw_signed(d, rng);
    acc += s.sign * observable[s.outcome.index];
  }
  return d.gamma() * acc / static_cast<double>(n);
}

double exact_expectation(const QuasiDecomposition& d, std::span<const double> observable) {
  check_observable(d, observable);
  const SignedDistribution p = target(d);
  double acc = 0.0;
  for (std::size_t x = 0; x < d.size(); ++x) acc += p[x] * observable[x];
  return acc;
}

std::uint64_t hoeffding_sample_count(double gamma, double epsilon, double delta) {
  if (!(gamma >= 1.0) || !(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("hoeffding_sample_count: invalid arguments");
  }
  return static_cast<std::uint64_t>(
      std::ceil(gamma * gamma * std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

double hoeffding_tolerance(double gamma, std::uint64_t n, double delta) {
  if (n == 0) throw std::invalid_argument("hoeffding_tolerance: n must be positive");
  return gamma * std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

double raw_term_variance(const QuasiDecomposition& d, std::size_t x) {
  const double q = (d.c_plus() * d.sigma_plus()[x] + d.c_minus() * d.sigma_minus()[x]) /
                   d.gamma();
  return d.gamma() * d.gamma() * (q - q * q);
}

}  // namespace weakdistill
