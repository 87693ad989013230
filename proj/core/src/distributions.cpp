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
#include "weakdistill/distributions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace weakdistill {

namespace {

double checked_sum(std::vector<double>& values, bool clamp_negative) {
  for (double& v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("distribution entry is not finite");
    }
    if (clamp_negative && v < 0.0) {
      if (v < -kNegativeTolerance) {
        throw std::invalid_argument("negative probability " + std::to_string(v));
      }
      v = 0.0;
    }
  }
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (std::abs(total - 1.0) > kRenormalizeTolerance) {
    throw std::invalid_argument("entries sum to " + std::to_string(total) +
                                ", expected 1");
  }
  return total;
}

}  // namespace

unsigned bits_for_size(std::size_t size) {
  if (size == 0 || !std::has_single_bit(size)) {
    throw std::invalid_argument("distribution length " + std::to_string(size) +
                                " is not a power of two");
  }
  const auto bits = static_cast<unsigned>(std::countr_zero(size));
  if (bits > kMaxDistributionBits) {
    throw std::invalid_argument("distribution over more than 2^24 outcomes");
  }
  return bits;
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs)
    : probs_(std::move(probs)), n_bits_(bits_for_size(probs_.size())) {
  const double total = checked_sum(probs_, /*clamp_negative=*/true);
  if (std::abs(total - 1.0) > kSumTolerance) {
    for (double& v : probs_) v /= total;
  }
  cdf_.resize(probs_.size());
  std::partial_sum(probs_.begin(), probs_.end(), cdf_.begin());
  for (std::size_t x = probs_.size(); x-- > 0;) {
    if (probs_[x] > 0.0) {
      last_support_ = static_cast<std::uint32_t>(x);
      break;
    }
  }
}

DiscreteDistribution DiscreteDistribution::uniform(unsigned n_bits) {
  if (n_bits > kMaxDistributionBits) {
    throw std::invalid_argument("too many bits for an exact distribution");
  }
  const std::size_t size = std::size_t{1} << n_bits;
  return DiscreteDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

DiscreteDistribution DiscreteDistribution::point_mass(unsigned n_bits,
                                                      std::uint32_t index) {
  if (n_bits > kMaxDistributionBits) {
    throw std::invalid_argument("too many bits for an exact distribution");
  }
  const std::size_t size = std::size_t{1} << n_bits;
  if (index >= size) throw std::invalid_argument("point mass index out of range");
  std::vector<double> probs(size, 0.0);
  probs[index] = 1.0;
  return DiscreteDistribution(std::move(probs));
}

DiscreteDistribution DiscreteDistribution::from_counts(
    std::span<const std::uint64_t> counts) {
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) throw std::invalid_argument("histogram with no counts");
  std::vector<double> probs(counts.size());
  for (std::size_t x = 0; x < counts.size(); ++x) {
    probs[x] = static_cast<double>(counts[x]) / static_cast<double>(total);
  }
  return DiscreteDistribution(std::move(probs));
}

Outcome DiscreteDistribution::sample(Rng& rng) const {
  const double u = rng.uniform() * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  auto index = static_cast<std::uint32_t>(it - cdf_.begin());
  if (index > last_support_) index = last_support_;
  return Outcome{index, n_bits_};
}

SignedDistribution::SignedDistribution(std::vector<double> values)
    : values_(std::move(values)), n_bits_(bits_for_size(values_.size())) {
  const double total = checked_sum(values_, /*clamp_negative=*/false);
  if (std::abs(total - 1.0) > kSumTolerance) {
    // Shift the error onto the positive mass so signs are preserved.
    double positive = 0.0;
    for (double v : values_) positive += std::max(v, 0.0);
    const double excess = total - 1.0;
    for (double& v : values_) {
      if (v > 0.0) v -= excess * v / positive;
    }
  }
}

bool SignedDistribution::is_physical() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v >= -kNegativeTolerance; });
}

DiscreteDistribution SignedDistribution::to_distribution() const {
  if (!is_physical()) {
    throw std::domain_error("quasi-probability has negative entries");
  }
  return DiscreteDistribution(values_);
}

Outcome sample(const DiscreteDistribution& p, Rng& rng) { return p.sample(rng); }

double tvd(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("tvd: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) acc += std::abs(p[x] - q[x]);
  return 0.5 * acc;
}

double tvd(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.n_bits() != q.n_bits()) {
    throw std::invalid_argument("tvd: dimension mismatch");
  }
  return std::min(1.0, tvd(p.probs(), q.probs()));
}

double renyi_entropy(const DiscreteDistribution& p, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0) {
    throw std::invalid_argument("renyi_entropy: alpha must be positive and != 1");
  }
  double acc = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) acc += std::pow(v, alpha);
  }
  const double h = std::log2(acc) / (1.0 - alpha);
  return std::max(h, 0.0);
}

DiscreteDistribution tensor(const DiscreteDistribution& low,
                            const DiscreteDistribution& high) {
  if (low.n_bits() + high.n_bits() > kMaxDistributionBits) {
    throw std::invalid_argument("tensor product exceeds the outcome cap");
  }
  std::vector<double> probs(low.size() * high.size());
  for (std::size_t h = 0; h < high.size(); ++h) {
    for (std::size_t l = 0; l < low.size(); ++l) {
      probs[h * low.size() + l] = high[h] * low[l];
    }
  }
  return DiscreteDistribution(std::move(probs));
}

}  // namespace weakdistill
