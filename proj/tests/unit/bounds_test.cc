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

#include "weakdistill/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "support/random.hpp"
#include "weakdistill/scenarios.hpp"
#include "weakdistill/weak_distill.hpp"

namespace weakdistill {
namespace {

using testing::dist;
using testing::random_physical;

// Frozen from an independent 50-digit evaluation (tests/oracles/bound_oracles.py).
constexpr double kEstimationOracle = 1188.6958208469615;
constexpr double kAlternativeEqualSplitOracle = 5777.4856642974198;
constexpr double kIsotropicHalfEntropyMinus = 9.9999891565104382;
constexpr double kIsotropicS = 5.3042913564565788;
constexpr double kIsotropicVariant1 = 6788.5321806250199;
constexpr double kIsotropicVariant2 = 12338.277148134722;

BoundInputs synthetic(double gamma, double eps, double delta, double h = 2.0) {
  BoundInputs in;
  in.gamma = gamma;
  in.c_minus = (gamma - 1) / 2;
  in.epsilon = eps;
  in.delta = delta;
  in.h_half_q = h;
  in.h_half_p_minus = h;
  in.h_half_p_plus = h;
  in.s_quantity = in.c_minus * std::exp2(h) / 2;
  return in;
}

TEST(BoundInputsTest, Validation) {
  auto in = synthetic(2.0, 0.1, 0.1);
  EXPECT_NO_THROW(in.validate());
  EXPECT_DOUBLE_EQ(in.c_plus(), 1.5);
  in.c_minus = 0.4;
  EXPECT_THROW(in.validate(), std::invalid_argument);
  in = synthetic(2.0, 0.0, 0.1);
  EXPECT_THROW(in.validate(), std::invalid_argument);
  in = synthetic(2.0, 0.1, 1.0);
  EXPECT_THROW(in.validate(), std::invalid_argument);
  in = synthetic(2.0, 0.1, 0.1);
  in.h_half_q = -1.0;
  EXPECT_THROW(in.validate(), std::invalid_argument);
}

TEST(SQuantityTest, Examples) {
  const auto free = QuasiDecomposition::free_state(dist({0.2, 0.8}));
  EXPECT_EQ(s_quantity(free), 0.0);
  const QuasiDecomposition u(1.5, 0.5, DiscreteDistribution::uniform(1), DiscreteDistribution::uniform(1));
  EXPECT_NEAR(s_quantity(u), 0.75, 1e-15);
  // Disjoint supports: every denominator with both factors nonzero is absent.
  const QuasiDecomposition disjoint(1.5, 0.5, dist({1, 0}), dist({0, 1}));
  EXPECT_EQ(s_quantity(disjoint), 0.0);
}

TEST(SQuantityTest, BelowNegativeEntropyTerm) {
  Rng rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    const auto d = testing::random_any(1 + static_cast<unsigned>(rng.below(4)), rng, 2.0);
    EXPECT_LE(s_quantity(d),
              d.c_minus() * std::exp2(renyi_entropy(d.sigma_minus(), 0.5)) * (1 + 1e-12));
  }
}

TEST(EstimationBoundTest, RegressionValue) {
  const double formula = 25.0 * std::pow(2.0 + std::sqrt(8.0 * std::log(20.0)), 2);
  const double got = bound_estimation(synthetic(1.0, 0.1, 0.1));
  EXPECT_NEAR(got / formula - 1.0, 0.0, 1e-6);
  EXPECT_NEAR(got / kEstimationOracle - 1.0, 0.0, 1e-12);
}

TEST(EstimationBoundTest, NearOneDeltaStillAboveFloor) {
  const auto in = synthetic(1.3, 0.1, 0.999, 3.0);
  EXPECT_GE(bound_estimation(in), in.gamma * in.gamma * std::exp2(3.0) / (4 * 0.01));
}

TEST(SplitTest, ComplementaryDelta) {
  for (double d1 : {0.001, 0.03, 0.09}) {
    const double d2 = complementary_delta(0.1, d1);
    EXPECT_NEAR((1 - d1) * (1 - d2), 0.9, 1e-15);
  }
}

TEST(OptimizeSplitTest, ConstantObjective) {
  const auto s = optimize_split([](double, double) { return 3.0; }, 0.2);
  EXPECT_GT(s.delta1, 0.0);
  EXPECT_LT(s.delta1, 0.2);
  EXPECT_NEAR((1 - s.delta1) * (1 - s.delta2), 0.8, 1e-9);
}

TEST(OptimizeSplitTest, MonotoneObjectiveGoesToBoundary) {
  const auto s = optimize_split([](double d1, double) { return 1.0 / d1; }, 0.1);
  EXPECT_GT(s.delta1, 0.1 * (1 - 1e-5));
  EXPECT_LT(s.delta1, 0.1);
}

TEST(OptimizeSplitTest, EqualizesTwoTermMax) {
  for (double a : {0.1, 1.0, 7.0}) {
    const double b = 1.0;
    const auto s = optimize_split(
        [&](double d1, double d2) { return std::max(a / d1, b / d2); }, 0.1);
    EXPECT_NEAR((a / s.delta1) / (b / s.delta2), 1.0, 1e-5) << "a=" << a;
  }
}

TEST(OptimizeSplitTest, SurvivesNonFiniteRegions) {
  const auto s = optimize_split(
      [](double d1, double) { return d1 < 0.05 ? INFINITY : (d1 - 0.07) * (d1 - 0.07); }, 0.1);
  EXPECT_NEAR(s.delta1, 0.07, 1e-6);
}

TEST(OptimizeSplitTest, Errors) {
  const auto f = [](double, double) { return 1.0; };
  EXPECT_THROW(optimize_split(f, 0.0), std::invalid_argument);
  EXPECT_THROW(optimize_split(f, 1.0), std::invalid_argument);
  EXPECT_THROW(optimize_split([](double, double) { return NAN; }, 0.1), std::exception);
}

TEST(RejectionBoundTest, FreeStateReducesToRetryBudget) {
  const auto in = synthetic(1.0, 0.1, 0.1);
  const auto b = bound_rejection(in, 2);
  const auto m = retry_budget(1.0, 0.0, 0.1, b.delta2);
  EXPECT_EQ(m, 1u);
  EXPECT_LE(b.value, 1.0 + double(m));
  EXPECT_DOUBLE_EQ(b.value, 1.0);
}

TEST(RejectionBoundTest, VariantOrderingAtFixedSplit) {
  Rng rng(2, 0);
  for (int i = 0; i < 100; ++i) {
    const auto d = random_physical(1 + static_cast<unsigned>(rng.below(4)), rng, 2.0, 0.2);
    const auto in = bound_inputs(d, 0.01 + 0.3 * rng.uniform(), 0.01 + 0.3 * rng.uniform());
    const double d1 = in.delta * (0.05 + 0.9 * rng.uniform());
    const double v1 = bound_rejection_at(in, 1, d1);
    const double v2 = bound_rejection_at(in, 2, d1);
    const double v3 = bound_rejection_at(in, 3, d1);
    EXPECT_LE(v1, v2 * (1 + 1e-12));
    EXPECT_LE(v2, v3 * (1 + 1e-12));
    const auto r = evaluate_bounds(in);
    EXPECT_LE(r.rejection_bounds[0].value, r.rejection_bounds[1].value * (1 + 1e-9));
    EXPECT_LE(r.rejection_bounds[1].value, r.rejection_bounds[2].value * (1 + 1e-9));
    EXPECT_GE(r.tightest_rejection(), 1.0);
    EXPECT_GE(r.estimation_bound, 1.0);
  }
}

TEST(RejectionBoundTest, InvalidVariantAndSplit) {
  const auto in = synthetic(1.5, 0.1, 0.1);
  EXPECT_THROW(bound_rejection(in, 4), std::invalid_argument);
  EXPECT_THROW(bound_rejection_at(in, 0, 0.05), std::invalid_argument);
  EXPECT_THROW(bound_rejection_at(in, 2, 0.1), std::invalid_argument);
  EXPECT_THROW(bound_alternative_at(in, 0.0), std::invalid_argument);
}

// c- > 0 throughout: at c- = 0 the rejection bounds collapse to the retry
// budget, which grows with epsilon.
TEST(BoundMonotonicityTest, GammaAndEpsilonGrid) {
  std::vector<double> gammas, epsilons;
  for (int i = 0; i < 20; ++i) {
    gammas.push_back(1.05 + 0.1 * i);
    epsilons.push_back(0.02 + 0.02 * i);
  }
  const auto all = [](const BoundInputs& in) {
    const auto r = evaluate_bounds(in);
    return std::vector<double>{r.estimation_bound, r.rejection_bounds[0].value,
                               r.rejection_bounds[1].value, r.rejection_bounds[2].value,
                               r.alt_bound.value};
  };
  std::vector<std::vector<std::vector<double>>> grid(20, std::vector<std::vector<double>>(20));
  for (int g = 0; g < 20; ++g)
    for (int e = 0; e < 20; ++e) grid[g][e] = all(synthetic(gammas[g], epsilons[e], 0.1));
  for (int g = 0; g < 20; ++g) {
    for (int e = 0; e < 20; ++e) {
      for (std::size_t k = 0; k < 5; ++k) {
        if (e + 1 < 20) { EXPECT_GE(grid[g][e][k], grid[g][e + 1][k]) << g << "," << e << "," << k; }
        if (g + 1 < 20) { EXPECT_LE(grid[g][e][k], grid[g + 1][e][k]) << g << "," << e << "," << k; }
      }
    }
  }
}

TEST(AlternativeBoundTest, EqualSplitRegression) {
  const auto in = synthetic(1.0, 0.1, 0.1, 0.0);
  const double d1 = 1.0 - std::sqrt(0.9);
  EXPECT_NEAR(bound_alternative_at(in, d1) / kAlternativeEqualSplitOracle - 1.0, 0.0, 1e-12);
  EXPECT_NEAR(kAlternativeV, 1.0 - std::exp(-0.5), 1e-16);
}

TEST(AlternativeBoundTest, LogarithmicInConfidence) {
  const auto in = synthetic(1.2, 0.1, 0.1, 2.0);
  const double base = bound_alternative_at(in, 0.05);
  const double halved = bound_alternative_at(in, 0.025);
  EXPECT_GT(halved, base);
  EXPECT_LT(halved, 1.5 * base);
}

TEST(AlternativeBoundTest, Crossover) {
  auto small_cm = synthetic(1.02, 0.1, 0.1, 2.0);
  EXPECT_LT(bound_rejection(small_cm, 2).value, bound_alternative(small_cm).value);
  auto tiny_delta = synthetic(1.02, 0.1, 1e-12, 2.0);
  EXPECT_GT(bound_rejection(tiny_delta, 2).value, bound_alternative(tiny_delta).value);
}

TEST(ScenarioBoundTest, IsotropicRegression) {
  const auto d = scenario_isotropic(5, 0.01);
  const auto in = bound_inputs(d, 0.1, 0.1);
  EXPECT_NEAR(in.h_half_p_minus, kIsotropicHalfEntropyMinus, 1e-12);
  EXPECT_NEAR(in.s_quantity / kIsotropicS - 1.0, 0.0, 1e-12);
  const auto v2 = bound_rejection(in, 2);
  const auto v1 = bound_rejection(in, 1);
  EXPECT_NEAR(v2.value / kIsotropicVariant2 - 1.0, 0.0, 1e-6);
  EXPECT_NEAR(v1.value / kIsotropicVariant1 - 1.0, 0.0, 1e-6);
  EXPECT_EQ(retry_budget(in.gamma, in.c_minus, 0.1, v2.delta2), 4u);
}

TEST(BoundReportTest, Json) {
  const auto r = evaluate_bounds(synthetic(1.5, 0.1, 0.1));
  const nlohmann::json j = r;
  EXPECT_EQ(j.at("retry_m"), r.retry_m);
  EXPECT_DOUBLE_EQ(j.at("rejection_bounds").at("variant_2").at("value").get<double>(),
                   r.rejection_bounds[1].value);
  EXPECT_TRUE(j.at("alt_bound").contains("delta1"));
}

}  // namespace
}  // namespace weakdistill
