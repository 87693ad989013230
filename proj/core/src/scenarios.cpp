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
#include "weakdistill/scenarios.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace weakdistill {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("noise parameter p must lie in [0, 1)");
}

}  // namespace

IqpCircuit random_iqp_circuit(unsigned n_bits, unsigned t_count, Rng& rng) {
  if (n_bits == 0 || n_bits > kMaxQubits) throw std::invalid_argument("iqp: bad qubit count");
  if (t_count > n_bits) throw std::invalid_argument("iqp: more T gates than qubits");
  IqpCircuit c;
  c.n_bits = n_bits;
  for (unsigned a = 0; a < n_bits; ++a) {
    for (unsigned b = a + 1; b < n_bits; ++b) {
      if (rng.bernoulli(0.5)) c.cz_pairs.emplace_back(a, b);
    }
  }
  c.s_powers.resize(n_bits);
  for (auto& k : c.s_powers) k = static_cast<unsigned>(rng.below(4));
  std::vector<unsigned> qubits(n_bits);
  std::iota(qubits.begin(), qubits.end(), 0u);
  for (unsigned i = 0; i < t_count; ++i) {
    const auto j = i + static_cast<unsigned>(rng.below(n_bits - i));
    std::swap(qubits[i], qubits[j]);
    c.t_positions.push_back(qubits[i]);
  }
  return c;
}

StateVector run_iqp(const IqpCircuit& circuit, std::uint32_t flip_mask) {
  StateVector psi(circuit.n_bits);
  for (unsigned q = 0; q < circuit.n_bits; ++q) psi.h(q);
  for (const auto& [a, b] : circuit.cz_pairs) psi.cz(a, b);
  for (unsigned q = 0; q < circuit.n_bits; ++q) {
    for (unsigned k = 0; k < circuit.s_powers.at(q) % 4; ++k) psi.s(q);
  }
  for (std::size_t g = 0; g < circuit.t_positions.size(); ++g) {
    const unsigned q = circuit.t_positions[g];
    psi.t(q);
    if ((flip_mask >> g) & 1u) psi.z(q);
  }
  for (unsigned q = 0; q < circuit.n_bits; ++q) psi.h(q);
  return psi;
}

void to_json(nlohmann::json& j, const IqpCircuit& c) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : c.cz_pairs) pairs.push_back({a, b});
  j = nlohmann::json{{"n_bits", c.n_bits},
                     {"cz_pairs", pairs},
                     {"s_powers", c.s_powers},
                     {"t_positions", c.t_positions}};
}

IqpCircuit iqp_circuit_from_json(const nlohmann::json& j) {
  IqpCircuit c;
  c.n_bits = j.at("n_bits").get<unsigned>();
  for (const auto& pair : j.at("cz_pairs")) {
    c.cz_pairs.emplace_back(pair.at(0).get<unsigned>(), pair.at(1).get<unsigned>());
  }
  c.s_powers = j.at("s_powers").get<std::vector<unsigned>>();
  c.t_positions = j.at("t_positions").get<std::vector<unsigned>>();
  if (c.s_powers.size() != c.n_bits) throw std::invalid_argument("iqp: s_powers length");
  return c;
}

DepolarizingInstance make_depolarizing(unsigned n_bits, double p, Rng& rng) {
  if (n_bits == 0 || n_bits > 6) throw std::invalid_argument("depolarizing: need 1 <= n <= 6");
  check_probability(p);
  StateVector psi = haar_random_state(n_bits, rng);
  const double c_plus = 1.0 / (1.0 - p);
  const double c_minus = p / (1.0 - p);

  // Subset S of qubits takes the -c_minus I/2 branch; the rest keep E(rho).
  std::vector<SignedTerm> terms;
  const std::uint32_t subsets = 1u << n_bits;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    const int k = std::popcount(mask);
    double coefficient = std::pow(c_plus, n_bits - k) * std::pow(c_minus, k);
    if (coefficient == 0.0) continue;
    if (k % 2 == 1) coefficient = -coefficient;
    DensityMatrix rho(psi);
    for (unsigned q = 0; q < n_bits; ++q) {
      rho.depolarize(q, (mask >> q) & 1u ? 1.0 : p);
    }
    terms.push_back({coefficient, rho.diagonal()});
  }
  return {std::move(psi), group_terms(terms)};
}

QuasiDecomposition scenario_depolarizing(unsigned n_bits, double p, Rng& rng) {
  return make_depolarizing(n_bits, p, rng).decomposition;
}

DiscreteDistribution bell_pairs_distribution(unsigned n_pairs) {
  if (n_pairs == 0 || 2 * n_pairs > kMaxQubits) {
    throw std::invalid_argument("isotropic: need 1 <= n_pairs <= 6");
  }
  const std::size_t size = std::size_t{1} << (2 * n_pairs);
  const double weight = std::ldexp(1.0, -static_cast<int>(n_pairs));
  std::vector<double> probs(size, 0.0);
  for (std::size_t x = 0; x < size; ++x) {
    bool matched = true;
    for (unsigned k = 0; k < n_pairs && matched; ++k) {
      matched = ((x >> (2 * k)) & 1u) == ((x >> (2 * k + 1)) & 1u);
    }
    if (matched) probs[x] = weight;
  }
  return DiscreteDistribution(std::move(probs));
}

QuasiDecomposition scenario_isotropic(unsigned n_pairs, double p) {
  check_probability(p);
  const DiscreteDistribution bell = bell_pairs_distribution(n_pairs);
  const double complement_dim = std::ldexp(1.0, 2 * static_cast<int>(n_pairs)) - 1.0;
  std::vector<double> complement(bell.size());
  std::vector<double> isotropic(bell.size());
  for (std::size_t x = 0; x < bell.size(); ++x) {
    complement[x] = (1.0 - bell[x]) / complement_dim;
    isotropic[x] = (1.0 - p) * bell[x] + p * complement[x];
  }
  if (p == 0.0) return QuasiDecomposition::free_state(DiscreteDistribution(std::move(isotropic)));
  return QuasiDecomposition(1.0 / (1.0 - p), p / (1.0 - p),
                            DiscreteDistribution(std::move(isotropic)),
                            DiscreteDistribution(std::move(complement)));
}

QuasiDecomposition iqp_decomposition(const IqpCircuit& circuit, double p) {
  check_probability(p);
  const auto t_count = static_cast<unsigned>(circuit.t_positions.size());
  if (circuit.n_bits > 8) throw std::invalid_argument("iqp: need n <= 8");
  if (t_count == 0 || t_count > 6) throw std::invalid_argument("iqp: need 1 <= t_count <= 6");
  const double c_plus = (2.0 - p) / (2.0 * (1.0 - p));
  const double c_minus = p / (2.0 * (1.0 - p));
  // Weight of the |T> (index 0) or |Tbar> (index 1) branch inside rho_p^T
  // (sign +) and rho_p^{Tbar} (sign -).
  const double keep = 1.0 - 0.5 * p;
  const double flip = 0.5 * p;

  const std::uint32_t patterns = 1u << t_count;
  std::vector<DiscreteDistribution> branch;
  branch.reserve(patterns);
  for (std::uint32_t f = 0; f < patterns; ++f) branch.push_back(run_iqp(circuit, f).probabilities());

  std::vector<SignedTerm> terms;
  const std::size_t size = branch.front().size();
  for (std::uint32_t s = 0; s < patterns; ++s) {
    const int negatives = std::popcount(s);
    double coefficient = std::pow(c_plus, t_count - negatives) * std::pow(c_minus, negatives);
    if (coefficient == 0.0) continue;
    if (negatives % 2 == 1) coefficient = -coefficient;
    std::vector<double> probs(size, 0.0);
    for (std::uint32_t f = 0; f < patterns; ++f) {
      double w = 1.0;
      for (unsigned g = 0; g < t_count; ++g) {
        const bool negative = (s >> g) & 1u;
        const bool flipped = (f >> g) & 1u;
        w *= negative == flipped ? keep : flip;
      }
      if (w == 0.0) continue;
      for (std::size_t x = 0; x < size; ++x) probs[x] += w * branch[f][x];
    }
    terms.push_back({coefficient, DiscreteDistribution(std::move(probs))});
  }
  return group_terms(terms);
}

IqpInstance make_iqp(unsigned n_bits, unsigned t_count, double p, Rng& rng) {
  if (n_bits == 0 || n_bits > 8) throw std::invalid_argument("iqp: need 1 <= n <= 8");
  IqpCircuit circuit = random_iqp_circuit(n_bits, t_count, rng);
  QuasiDecomposition d = iqp_decomposition(circuit, p);
  return {std::move(circuit), std::move(d)};
}

QuasiDecomposition scenario_iqp(unsigned n_bits, unsigned t_count, double p, Rng& rng) {
  return make_iqp(n_bits, t_count, p, rng).decomposition;
}

ScenarioSpec default_scenario(const std::string& name, std::uint64_t seed) {
  ScenarioSpec spec;
  spec.name = name;
  spec.seed = seed;
  if (name == "depolarizing") {
    spec.n_qubits = 4;
    spec.p = 0.005;
  } else if (name == "isotropic") {
    spec.n_pairs = 5;
    spec.p = 0.01;
  } else if (name == "iqp") {
    spec.n_qubits = 5;
    spec.t_count = 5;
    spec.p = 0.1;
  } else {
    throw std::invalid_argument("unknown scenario '" + name + "'");
  }
  return spec;
}

Scenario build_scenario(const ScenarioSpec& spec) {
  Rng rng(spec.seed, kScenarioStream);
  if (spec.name == "depolarizing") {
    auto inst = make_depolarizing(spec.n_qubits, spec.p, rng);
    return Scenario{spec, std::move(inst.decomposition), std::move(inst.state), std::nullopt};
  }
  if (spec.name == "isotropic") {
    return Scenario{spec, scenario_isotropic(spec.n_pairs, spec.p), std::nullopt, std::nullopt};
  }
  if (spec.name == "iqp") {
    auto inst = make_iqp(spec.n_qubits, spec.t_count, spec.p, rng);
    return Scenario{spec, std::move(inst.decomposition), std::nullopt, std::move(inst.circuit)};
  }
  throw std::invalid_argument("unknown scenario '" + spec.name + "'");
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json params{{"p", s.spec.p}};
  if (s.spec.name == "isotropic") {
    params["n_pairs"] = s.spec.n_pairs;
  } else {
    params["n_qubits"] = s.spec.n_qubits;
  }
  if (s.spec.name == "iqp") params["t_count"] = s.spec.t_count;

  nlohmann::json j{{"generator", s.spec.name},
                   {"parameters", params},
                   {"seed", s.spec.seed},
                   {"decomposition", s.decomposition}};
  if (s.state) {
    nlohmann::json amps = nlohmann::json::array();
    for (const auto& a : s.state->amplitudes()) amps.push_back({a.real(), a.imag()});
    j["state"] = amps;
  }
  if (s.circuit) j["circuit"] = *s.circuit;
  return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
  ScenarioSpec spec;
  spec.name = j.at("generator").get<std::string>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  const auto& params = j.at("parameters");
  spec.p = params.at("p").get<double>();
  spec.n_pairs = params.value("n_pairs", 0u);
  spec.n_qubits = params.value("n_qubits", 0u);
  spec.t_count = params.value("t_count", 0u);

  Scenario s{spec, decomposition_from_json(j.at("decomposition")), std::nullopt, std::nullopt};
  if (j.contains("state")) {
    std::vector<Complex> amps;
    for (const auto& a : j.at("state")) amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    s.state = StateVector(std::move(amps));
  }
  if (j.contains("circuit")) s.circuit = iqp_circuit_from_json(j.at("circuit"));
  return s;
}

}  // namespace weakdistill
