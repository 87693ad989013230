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
#include "weakdistill/quasiprob.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace weakdistill {

namespace {

constexpr double kCoefficientTolerance = 1e-9;

}  // namespace

QuasiDecomposition::QuasiDecomposition(double c_plus, double c_minus,
                                       DiscreteDistribution sigma_plus,
                                       DiscreteDistribution sigma_minus)
    : c_plus_(c_plus),
      c_minus_(c_minus),
      sigma_plus_(std::move(sigma_plus)),
      sigma_minus_(std::move(sigma_minus)) {
  if (!std::isfinite(c_plus_) || !std::isfinite(c_minus_) || c_plus_ < 0.0 ||
      c_minus_ < 0.0) {
    throw std::invalid_argument("decomposition coefficients must be finite and nonnegative");
  }
  if (std::abs(c_plus_ - c_minus_ - 1.0) > kCoefficientTolerance) {
    throw std::invalid_argument("c_plus - c_minus = " + std::to_string(c_plus_ - c_minus_) +
                                ", expected 1");
  }
  if (sigma_plus_.n_bits() != sigma_minus_.n_bits()) {
    throw std::invalid_argument("sigma_plus and sigma_minus differ in dimension");
  }
}

QuasiDecomposition QuasiDecomposition::free_state(DiscreteDistribution sigma) {
  auto dummy = DiscreteDistribution::uniform(sigma.n_bits());
  return QuasiDecomposition(1.0, 0.0, std::move(sigma), std::move(dummy));
}

DiscreteDistribution mixture(const QuasiDecomposition& d) {
  const double wp = d.c_plus() / d.gamma();
  const double wm = d.c_minus() / d.gamma();
  std::vector<double> q(d.size());
  for (std::size_t x = 0; x < q.size(); ++x) {
    q[x] = wp * d.sigma_plus()[x] + wm * d.sigma_minus()[x];
  }
  return DiscreteDistribution(std::move(q));
}

SignedDistribution target(const QuasiDecomposition& d) {
  std::vector<double> p(d.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    p[x] = d.c_plus() * d.sigma_plus()[x] - d.c_minus() * d.sigma_minus()[x];
  }
  return SignedDistribution(std::move(p));
}

SignedSample draw_signed(const QuasiDecomposition& d, Rng& rng) {
  if (d.is_free() || rng.bernoulli(d.heads_probability())) {
    return {d.sigma_plus().sample(rng), +1};
  }
  return {d.sigma_minus().sample(rng), -1};
}

QuasiDecomposition group_terms(std::span<const SignedTerm> terms) {
  if (terms.empty()) throw std::invalid_argument("group_terms: no terms");
  const std::size_t size = terms.front().distribution.size();
  std::vector<double> plus(size, 0.0);
  std::vector<double> minus(size, 0.0);
  double c_plus = 0.0;
  double c_minus = 0.0;
  for (const auto& term : terms) {
    if (term.distribution.size() != size) {
      throw std::invalid_argument("group_terms: dimension mismatch");
    }
    auto& acc = term.coefficient >= 0.0 ? plus : minus;
    const double weight = std::abs(term.coefficient);
    (term.coefficient >= 0.0 ? c_plus : c_minus) += weight;
    for (std::size_t x = 0; x < size; ++x) acc[x] += weight * term.distribution[x];
  }
  if (!(c_plus > 0.0)) throw std::invalid_argument("group_terms: no positive mass");
  for (double& v : plus) v /= c_plus;
  const unsigned n_bits = bits_for_size(size);
  if (c_minus == 0.0) {
    return QuasiDecomposition(c_plus, 0.0, DiscreteDistribution(std::move(plus)),
                              DiscreteDistribution::uniform(n_bits));
  }
  for (double& v : minus) v /= c_minus;
  return QuasiDecomposition(c_plus, c_minus, DiscreteDistribution(std::move(plus)),
                            DiscreteDistribution(std::move(minus)));
}

namespace {

// (c1+ s1+ - c1- s1-) (x) (c2+ s2+ - c2- s2-): like-sign products are positive,
// mixed-sign products negative.
QuasiDecomposition combine_pair(const QuasiDecomposition& low,
                                const QuasiDecomposition& high) {
  const std::vector<SignedTerm> terms = {
      {low.c_plus() * high.c_plus(), tensor(low.sigma_plus(), high.sigma_plus())},
      {low.c_minus() * high.c_minus(), tensor(low.sigma_minus(), high.sigma_minus())},
      {-low.c_plus() * high.c_minus(), tensor(low.sigma_plus(), high.sigma_minus())},
      {-low.c_minus() * high.c_plus(), tensor(low.sigma_minus(), high.sigma_plus())},
  };
  // Drop zero-weight placeholder terms so a free factor stays free.
  std::vector<SignedTerm> kept;
  for (const auto& t : terms) {
    if (t.coefficient != 0.0) kept.push_back(t);
  }
  return group_terms(kept);
}

}  // namespace

QuasiDecomposition combine_factors(std::span<const QuasiDecomposition> factors) {
  if (factors.empty()) throw std::invalid_argument("combine_factors: no factors");
  unsigned total_bits = 0;
  for (const auto& f : factors) total_bits += f.n_bits();
  if (total_bits > kMaxDistributionBits) {
    throw std::invalid_argument("combine_factors: total dimension exceeds 2^24");
  }
  QuasiDecomposition acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = combine_pair(acc, factors[i]);
  return acc;
}

void to_json(nlohmann::json& j, const QuasiDecomposition& d) {
  j = nlohmann::json{
      {"n_bits", d.n_bits()},
      {"c_plus", d.c_plus()},
      {"c_minus", d.c_minus()},
      {"sigma_plus", std::vector<double>(d.sigma_plus().probs().begin(),
                                         d.sigma_plus().probs().end())},
      {"sigma_minus", std::vector<double>(d.sigma_minus().probs().begin(),
                                          d.sigma_minus().probs().end())},
  };
}

QuasiDecomposition decomposition_from_json(const nlohmann::json& j) {
  auto plus = j.at("sigma_plus").get<std::vector<double>>();
  auto minus = j.at("sigma_minus").get<std::vector<double>>();
  const auto n_bits = j.at("n_bits").get<unsigned>();
  if (plus.size() != (std::size_t{1} << n_bits)) {
    throw std::invalid_argument("sigma_plus length does not match n_bits");
  }
  return QuasiDecomposition(j.at("c_plus").get<double>(), j.at("c_minus").get<double>(),
                            DiscreteDistribution(std::move(plus)),
                            DiscreteDistribution(std::move(minus)));
}

}  // namespace weakdistill
