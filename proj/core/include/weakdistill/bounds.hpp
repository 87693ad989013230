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

#include <array>
#include <cstdint>
#include <functional>

#include "json.hpp"
#include "weakdistill/quasiprob.hpp"

namespace weakdistill {

// Everything the closed-form sample-cost bounds depend on. Entropies are
// Renyi-1/2 entropies in bits; all other logarithms in the bounds are natural.
struct BoundInputs {
  double gamma = 1.0;
  double c_minus = 0.0;
  double epsilon = 0.1;
  double delta = 0.1;
  double h_half_q = 0.0;
  double h_half_p_minus = 0.0;
  double h_half_p_plus = 0.0;
  double s_quantity = 0.0;

  double c_plus() const { return gamma - c_minus; }
  // Throws std::invalid_argument on out-of-range fields or when
  // gamma != 1 + 2 c_minus (within 1e-9).
  void validate() const;
};

BoundInputs bound_inputs(const QuasiDecomposition& d, double epsilon, double delta);

// S = ( sum_x sqrt( c+ c- p+_x p-_x / (c+ p+_x + c- p-_x) ) )^2
double s_quantity(const QuasiDecomposition& d);

// Probability-estimation sampler cost:
//   gamma^2/(4 eps^2) (2^{H(q)/2} + sqrt(8 ln(2/delta)))^2
double bound_estimation(const BoundInputs& in);

struct Split {
  double delta1 = 0.0;
  double delta2 = 0.0;
};

struct SplitBound {
  double value = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
};

// delta2 = 1 - (1 - delta)/(1 - delta1), so that (1-delta1)(1-delta2) = 1-delta.
double complementary_delta(double delta, double delta1);

// Minimizes objective(delta1, delta2) over feasible splits delta1 in (0, delta).
// A coarse scan brackets the minimum and golden-section search refines it to a
// relative tolerance of 1e-6; when the scan is not unimodal a 10^4-point grid
// scan is used instead. Throws std::invalid_argument for delta outside (0, 1).
Split optimize_split(const std::function<double(double, double)>& objective, double delta);

// Rejection-framework bound at a fixed split. variant 1 uses S, variant 2 the
// entropy of p-, variant 3 the entropy of p+; all include the retry budget M.
double bound_rejection_at(const BoundInputs& in, int variant, double delta1);
SplitBound bound_rejection(const BoundInputs& in, int variant);

// v = 1 - e^{-1/2}
inline constexpr double kAlternativeV = 0.39346934028736658;

// 2 gamma^2 ((1+eps)/eps)^2 (2^{H(q)/2} + sqrt((2/v) ln(1/delta1)))^2 + M
double bound_alternative_at(const BoundInputs& in, double delta1);
SplitBound bound_alternative(const BoundInputs& in);

struct BoundReport {
  double epsilon = 0.0;
  double delta = 0.0;
  double estimation_bound = 0.0;
  std::array<SplitBound, 3> rejection_bounds{};
  SplitBound alt_bound{};
  // Retry budget at the variant-2 split.
  std::uint64_t retry_m = 1;

  double tightest_rejection() const;
};

BoundReport evaluate_bounds(const BoundInputs& in);

void to_json(nlohmann::json& j, const SplitBound& b);
void to_json(nlohmann::json& j, const BoundReport& r);

}  // namespace weakdistill
