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

#include <span>
#include <vector>

#include "json.hpp"
#include "weakdistill/distributions.hpp"
#include "weakdistill/rng.hpp"

namespace weakdistill {

// rho = c_plus * sigma_plus - c_minus * sigma_minus, stored through the
// computational-basis distributions of sigma_plus and sigma_minus.
//
// Invariant: c_plus - c_minus == 1 (within 1e-9) and both are nonnegative.
// A free state has c_minus == 0; sigma_minus is then a uniform placeholder
// that draw_signed never selects.
class QuasiDecomposition {
 public:
  QuasiDecomposition(double c_plus, double c_minus, DiscreteDistribution sigma_plus,
                     DiscreteDistribution sigma_minus);

  // c_minus = 0 decomposition of a free state.
  static QuasiDecomposition free_state(DiscreteDistribution sigma);

  double c_plus() const { return c_plus_; }
  double c_minus() const { return c_minus_; }
  double gamma() const { return c_plus_ + c_minus_; }
  unsigned n_bits() const { return sigma_plus_.n_bits(); }
  std::size_t size() const { return sigma_plus_.size(); }
  bool is_free() const { return c_minus_ == 0.0; }

  const DiscreteDistribution& sigma_plus() const { return sigma_plus_; }
  const DiscreteDistribution& sigma_minus() const { return sigma_minus_; }
  // Probability that a signed draw uses sigma_plus, c_plus / gamma.
  double heads_probability() const { return c_plus_ / gamma(); }

 private:
  double c_plus_;
  double c_minus_;
  DiscreteDistribution sigma_plus_;
  DiscreteDistribution sigma_minus_;
};

struct SignedSample {
  Outcome outcome;
  int sign = +1;
};

// q_x = (c_plus p+_x + c_minus p-_x) / gamma, the law of the samplable mixture.
DiscreteDistribution mixture(const QuasiDecomposition& d);

// p_x = c_plus p+_x - c_minus p-_x.
SignedDistribution target(const QuasiDecomposition& d);

// Coin with heads probability c_plus/gamma, then a measurement of sigma_plus
// (sign +1) or sigma_minus (sign -1).
SignedSample draw_signed(const QuasiDecomposition& d, Rng& rng);

// One term of an expanded quasi-probability sum. coefficient carries the sign.
struct SignedTerm {
  double coefficient;
  DiscreteDistribution distribution;
};

// Groups an arbitrary signed mixture into the two-term form by convexity:
// positive terms form sigma_plus, negative terms form sigma_minus. Throws
// std::invalid_argument unless the coefficients sum to one.
QuasiDecomposition group_terms(std::span<const SignedTerm> terms);

// Decomposition of the tensor product of decompositions acting on disjoint
// qubit blocks; factors[0] occupies the lowest bits. The resulting gamma is
// the product of the factor gammas.
QuasiDecomposition combine_factors(std::span<const QuasiDecomposition> factors);

void to_json(nlohmann::json& j, const QuasiDecomposition& d);
QuasiDecomposition decomposition_from_json(const nlohmann::json& j);

}  // namespace weakdistill
