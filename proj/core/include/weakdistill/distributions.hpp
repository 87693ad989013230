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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "weakdistill/rng.hpp"

namespace weakdistill {

// Exact probability vectors are capped at 2^24 entries.
inline constexpr unsigned kMaxDistributionBits = 24;

// Tolerances for the unit-sum check: deviations up to kRenormalizeTolerance
// are renormalized away, larger ones are rejected.
inline constexpr double kSumTolerance = 1e-9;
inline constexpr double kRenormalizeTolerance = 1e-6;
inline constexpr double kNegativeTolerance = 1e-9;

// A computational-basis measurement label x in [0, 2^n).
struct Outcome {
  std::uint32_t index = 0;
  unsigned n_bits = 0;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Number of qubits n such that size == 2^n. Throws std::invalid_argument when
// size is not a power of two or exceeds kMaxDistributionBits.
unsigned bits_for_size(std::size_t size);

// Probability vector over 2^n outcomes. Immutable; carries a cumulative table
// for O(log 2^n) sampling.
class DiscreteDistribution {
 public:
  // Entries in [-1e-9, 0) are clamped to zero, and the vector is renormalized
  // when its sum is within 1e-6 of one. Anything else throws
  // std::invalid_argument.
  explicit DiscreteDistribution(std::vector<double> probs);

  static DiscreteDistribution uniform(unsigned n_bits);
  static DiscreteDistribution point_mass(unsigned n_bits, std::uint32_t index);
  // Normalized histogram. Throws if every count is zero.
  static DiscreteDistribution from_counts(std::span<const std::uint64_t> counts);

  unsigned n_bits() const { return n_bits_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t x) const { return probs_[x]; }
  std::span<const double> probs() const { return probs_; }

  Outcome sample(Rng& rng) const;

 private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
  unsigned n_bits_;
  std::uint32_t last_support_ = 0;
};

// Real vector summing to one whose entries may be negative.
class SignedDistribution {
 public:
  explicit SignedDistribution(std::vector<double> values);

  unsigned n_bits() const { return n_bits_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t x) const { return values_[x]; }
  std::span<const double> values() const { return values_; }

  // True when no entry is below -1e-9.
  bool is_physical() const;
  // Converts the physical case; throws std::domain_error otherwise.
  DiscreteDistribution to_distribution() const;

 private:
  std::vector<double> values_;
  unsigned n_bits_;
};

Outcome sample(const DiscreteDistribution& p, Rng& rng);

// Total variation distance 1/2 sum_x |p_x - q_x|.
double tvd(const DiscreteDistribution& p, const DiscreteDistribution& q);
double tvd(std::span<const double> p, std::span<const double> q);

// Renyi entropy of order alpha in bits. alpha must be positive and != 1.
double renyi_entropy(const DiscreteDistribution& p, double alpha);

// Tensor product p (x) q with p on the low bits of the outcome index.
DiscreteDistribution tensor(const DiscreteDistribution& low,
                            const DiscreteDistribution& high);

}  // namespace weakdistill
