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
#include <span>
#include <vector>

#include "weakdistill/distributions.hpp"
#include "weakdistill/quasiprob.hpp"
#include "weakdistill/rng.hpp"
#include "weakdistill/weak_distill.hpp"

namespace weakdistill {

// Importance-sampling estimate of p from signed draws.
//
// raw_x = gamma (N+_x - N-_x) / N is unbiased but may be negative and sums to
// a value in [-gamma, gamma]. clipped_normalized keeps max(raw_x, 0) and
// rescales it to unit mass; when no entry is positive it falls back to the
// uniform distribution.
struct EmpiricalSignedEstimate {
  std::vector<double> raw;
  DiscreteDistribution clipped_normalized;
  std::uint64_t n_samples = 0;
};

// Builds the estimate from an existing tally. A tally with zero draws gives
// raw == 0 and the uniform fallback.
EmpiricalSignedEstimate estimate_from_counts(const QuasiDecomposition& d,
                                             const SignedCounts& counts);

// Draws n >= 1 signed samples and builds the estimate.
EmpiricalSignedEstimate estimate_distribution(const QuasiDecomposition& d, std::uint64_t n,
                                              Rng& rng);

// Clip negative entries to zero and normalize; uniform if nothing is positive.
DiscreteDistribution clip_and_normalize(std::span<const double> raw);

Outcome sample_from_estimate(const EmpiricalSignedEstimate& e, Rng& rng);

// Mean of gamma * sign_i * observable[x_i] over n signed draws. The observable
// is diagonal in the computational basis with entries in [-1/2, 1/2].
double estimate_expectation(const QuasiDecomposition& d, std::span<const double> observable,
                            std::uint64_t n, Rng& rng);

// Exact sum_x p_x observable[x].
double exact_expectation(const QuasiDecomposition& d, std::span<const double> observable);

// Each term of estimate_expectation lies in an interval of width gamma, so
// Hoeffding gives P(|error| >= eps) <= 2 exp(-2 n eps^2 / gamma^2).
std::uint64_t hoeffding_sample_count(double gamma, double epsilon, double delta);
double hoeffding_tolerance(double gamma, std::uint64_t n, double delta);

// Per-draw variance bound gamma^2 (q_x - q_x^2) of a single raw_x term, as
// used in the probability-estimation analysis. Divide by N for the variance of
// raw_x itself.
double raw_term_variance(const QuasiDecomposition& d, std::size_t x);

}  // namespace weakdistill
