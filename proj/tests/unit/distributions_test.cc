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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "support/random.hpp"

namespace weakdistill {
namespace {

using testing::dist;
using testing::random_distribution;

TEST(BitsForSize, PowersOfTwo) {
  EXPECT_EQ(bits_for_size(1), 0u);
  EXPECT_EQ(bits_for_size(2), 1u);
  EXPECT_EQ(bits_for_size(1024), 10u);
  EXPECT_THROW(bits_for_size(0), std::invalid_argument);
  EXPECT_THROW(bits_for_size(3), std::invalid_argument);
  EXPECT_THROW(bits_for_size(std::size_t{1} << 25), std::invalid_argument);
}

TEST(DiscreteDistributionTest, RenormalizesSmallDrift) {
  DiscreteDistribution p({0.5 + 5e-7, 0.5});
  EXPECT_NEAR(p[0] + p[1], 1.0, 1e-15);
}

TEST(DiscreteDistributionTest, ClampsTinyNegatives) {
  DiscreteDistribution p({1.0 + 5e-10, -5e-10});
  EXPECT_EQ(p[1], 0.0);
}

TEST(DiscreteDistributionTest, RejectsBadInput) {
  EXPECT_THROW(DiscreteDistribution({0.6, 0.6}), std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution({1.1, -0.1}), std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution({0.5, 0.25, 0.25}), std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution({NAN, 1.0}), std::invalid_argument);
}

TEST(DiscreteDistributionTest, Factories) {
  const auto u = DiscreteDistribution::uniform(3);
  ASSERT_EQ(u.size(), 8u);
  for (double v : u.probs()) EXPECT_DOUBLE_EQ(v, 0.125);
  const auto pm = DiscreteDistribution::point_mass(2, 3);
  EXPECT_EQ(pm[3], 1.0);
  EXPECT_THROW(DiscreteDistribution::point_mass(2, 4), std::invalid_argument);
  const std::vector<std::uint64_t> counts{1, 3};
  const auto h = DiscreteDistribution::from_counts(counts);
  EXPECT_DOUBLE_EQ(h[1], 0.75);
  const std::vector<std::uint64_t> none{0, 0};
  EXPECT_THROW(DiscreteDistribution::from_counts(none), std::invalid_argument);
}

TEST(SignedDistributionTest, PhysicalConversion) {
  SignedDistribution good({0.3, 0.7});
  EXPECT_TRUE(good.is_physical());
  EXPECT_DOUBLE_EQ(good.to_distribution()[1], 0.7);
  SignedDistribution bad({1.1, -0.1});
  EXPECT_FALSE(bad.is_physical());
  EXPECT_THROW(bad.to_distribution(), std::domain_error);
}

TEST(TvdTest, Examples) {
  EXPECT_EQ(tvd(DiscreteDistribution::uniform(2), DiscreteDistribution::uniform(2)), 0.0);
  EXPECT_DOUBLE_EQ(tvd(DiscreteDistribution::point_mass(1, 0), DiscreteDistribution::point_mass(1, 1)), 1.0);
  EXPECT_NEAR(tvd(dist({0.7, 0.3}), dist({0.5, 0.5})), 0.2, 1e-15);
  EXPECT_THROW(tvd(DiscreteDistribution::uniform(1), DiscreteDistribution::uniform(2)),
               std::invalid_argument);
}

TEST(TvdTest, MetricPropertiesOnRandomTriples) {
  Rng rng(11, 0);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_distribution(3, rng, 0.2);
    const auto q = random_distribution(3, rng, 0.2);
    const auto r = random_distribution(3, rng, 0.2);
    EXPECT_GE(tvd(p, q), 0.0);
    EXPECT_LE(tvd(p, q), 1.0 + 1e-15);
    EXPECT_EQ(tvd(p, q), tvd(q, p));
    EXPECT_LE(tvd(p, r), tvd(p, q) + tvd(q, r) + 1e-15);
  }
}

TEST(RenyiTest, Examples) {
  EXPECT_NEAR(renyi_entropy(DiscreteDistribution::uniform(5), 0.5), 5.0, 1e-12);
  EXPECT_NEAR(renyi_entropy(DiscreteDistribution::uniform(3), 2.0), 3.0, 1e-12);
  EXPECT_NEAR(renyi_entropy(DiscreteDistribution::point_mass(3, 2), 0.5), 0.0, 1e-15);
  // Zero padding to a power of two leaves the entropy unchanged.
  const double expected = std::log2(std::pow(std::sqrt(0.5) + 2 * 0.5, 2));
  EXPECT_NEAR(renyi_entropy(dist({0.5, 0.25, 0.25, 0.0}), 0.5), expected, 1e-12);
  EXPECT_NEAR(expected, 1.5431, 1e-4);
}

TEST(RenyiTest, RejectsBadOrder) {
  const auto u = DiscreteDistribution::uniform(1);
  EXPECT_THROW(renyi_entropy(u, 1.0), std::invalid_argument);
  EXPECT_THROW(renyi_entropy(u, 0.0), std::invalid_argument);
  EXPECT_THROW(renyi_entropy(u, -2.0), std::invalid_argument);
}

TEST(RenyiTest, HalfOrderRangeAndUnrolledDefinition) {
  Rng rng(12, 0);
  for (int i = 0; i < 200; ++i) {
    const unsigned n = 1 + static_cast<unsigned>(rng.below(5));
    const auto p = random_distribution(n, rng, 0.3);
    const double h = renyi_entropy(p, 0.5);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, n + 1e-12);
    double root_sum = 0.0;
    for (double v : p.probs()) root_sum += std::sqrt(v);
    EXPECT_NEAR(std::exp2(h), root_sum * root_sum, 1e-9);
  }
}

TEST(SampleTest, PointMassAlwaysSame) {
  Rng rng(1, 0);
  const auto p = DiscreteDistribution::point_mass(2, 3);
  for (int i = 0; i < 1000; ++i) {
    const auto x = sample(p, rng);
    ASSERT_EQ(x.index, 3u);
    ASSERT_EQ(x.n_bits, 2u);
  }
}

TEST(SampleTest, FairCoin) {
  Rng rng(2, 0);
  const auto p = DiscreteDistribution::uniform(1);
  const int n = 100000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += sample(p, rng).index == 0;
  EXPECT_NEAR(zeros / double(n), 0.5, 5 * std::sqrt(0.25 / n));
}

TEST(SampleTest, Deterministic) {
  const auto p = dist({0.1, 0.2, 0.3, 0.4});
  Rng a(77, 3), b(77, 3);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(sample(p, a), sample(p, b));
}

TEST(SampleTest, HistogramMatchesSixteenOutcomes) {
  Rng setup(13, 0);
  const auto p = random_distribution(4, setup, 0.2);
  Rng rng(13, 1);
  std::vector<std::uint64_t> hist(16, 0);
  for (int i = 0; i < 1000000; ++i) ++hist[sample(p, rng).index];
  EXPECT_LT(tvd(p, DiscreteDistribution::from_counts(hist)), 0.005);
  for (std::size_t x = 0; x < 16; ++x) {
    if (p[x] == 0.0) { EXPECT_EQ(hist[x], 0u); }
  }
}

TEST(TensorTest, LowBitsComeFromFirstFactor) {
  const auto low = dist({0.25, 0.75});
  const auto high = dist({0.4, 0.6});
  const auto t = tensor(low, high);
  ASSERT_EQ(t.n_bits(), 2u);
  EXPECT_DOUBLE_EQ(t[0b01], 0.75 * 0.4);
  EXPECT_DOUBLE_EQ(t[0b10], 0.25 * 0.6);
}

}  // namespace
}  // namespace weakdistill
