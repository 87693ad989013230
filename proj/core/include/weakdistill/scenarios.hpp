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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "weakdistill/quantum.hpp"
#include "weakdistill/quasiprob.hpp"
#include "weakdistill/rng.hpp"

namespace weakdistill {

// H^n . D . H^n |0...0> with D built from CZ pairs, S^k phases and T gates on
// distinct qubits. All diagonal gates commute, so their order is irrelevant.
struct IqpCircuit {
  unsigned n_bits = 0;
  std::vector<std::pair<unsigned, unsigned>> cz_pairs;
  std::vector<unsigned> s_powers;  // per qubit, in [0, 4)
  std::vector<unsigned> t_positions;
};

// CZ on each pair with probability 1/2, uniform S power per qubit, T gates on
// t_count distinct uniformly chosen qubits.
IqpCircuit random_iqp_circuit(unsigned n_bits, unsigned t_count, Rng& rng);

// Runs the circuit with T-gate injection at the channel level: bit g of
// flip_mask selects the flipped resource state for T gate g, which applies Z T
// instead of T.
StateVector run_iqp(const IqpCircuit& circuit, std::uint32_t flip_mask = 0);

void to_json(nlohmann::json& j, const IqpCircuit& c);
IqpCircuit iqp_circuit_from_json(const nlohmann::json& j);

// Local depolarizing noise E(rho) = (1-p) rho + p I/2 on every qubit of a
// Haar-random n-qubit state, mitigated through the per-qubit inverse
// rho = E(rho)/(1-p) - p/(1-p) I/2. n <= 6.
struct DepolarizingInstance {
  StateVector state;
  QuasiDecomposition decomposition;
};
DepolarizingInstance make_depolarizing(unsigned n_bits, double p, Rng& rng);
QuasiDecomposition scenario_depolarizing(unsigned n_bits, double p, Rng& rng);

// Phi^{(x)n} = rho_p/(1-p) - p/(1-p) (I - Phi^{(x)n})/(4^n - 1) on n Bell pairs
// (2n qubits, pair k on qubits 2k and 2k+1), where rho_p is the isotropic
// state. 2 n_pairs <= 12.
QuasiDecomposition scenario_isotropic(unsigned n_pairs, double p);

// <x|Phi^{(x)n}|x>: 2^{-n} when both qubits of every pair agree, else 0.
DiscreteDistribution bell_pairs_distribution(unsigned n_pairs);

// T-doped IQP circuit where every T gate is fed the dephased resource
//   T = (2-p)/(2(1-p)) rho_p^T - p/(2(1-p)) rho_p^{Tbar},
//   rho_p^T = (1 - p/2)|T><T| + (p/2)|Tbar><Tbar|.
// The 2^t sign patterns are grouped into one two-term decomposition.
// n <= 8, t_count <= min(n, 6).
struct IqpInstance {
  IqpCircuit circuit;
  QuasiDecomposition decomposition;
};
IqpInstance make_iqp(unsigned n_bits, unsigned t_count, double p, Rng& rng);
QuasiDecomposition scenario_iqp(unsigned n_bits, unsigned t_count, double p, Rng& rng);
QuasiDecomposition iqp_decomposition(const IqpCircuit& circuit, double p);

// Named scenario with its generator parameters.
struct ScenarioSpec {
  std::string name;  // "depolarizing", "isotropic" or "iqp"
  unsigned n_qubits = 0;
  unsigned n_pairs = 0;
  unsigned t_count = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

// Default parameters of the three reference scenarios.
ScenarioSpec default_scenario(const std::string& name, std::uint64_t seed = 1);

// Stream reserved for scenario construction; trial t uses stream t.
inline constexpr std::uint64_t kScenarioStream = 0xFFFFFFFFFFFFFFFFull;

struct Scenario {
  ScenarioSpec spec;
  QuasiDecomposition decomposition;
  std::optional<StateVector> state;      // depolarizing only
  std::optional<IqpCircuit> circuit;     // iqp only
};

// Throws std::invalid_argument for unknown names or out-of-range parameters.
Scenario build_scenario(const ScenarioSpec& spec);

nlohmann::json scenario_to_json(const Scenario& s);
// Replays an exported instance from its stored decomposition.
Scenario scenario_from_json(const nlohmann::json& j);

}  // namespace weakdistill
