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
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "weakdistill/distributions.hpp"

namespace weakdistill {

using Complex = std::complex<double>;

// Dense simulation is capped at 12 qubits.
inline constexpr unsigned kMaxQubits = 12;

// Qubit q is bit q of the basis index (little-endian).
class StateVector {
 public:
  // |0...0> on n qubits.
  explicit StateVector(unsigned n_bits);
  // Normalizes; throws if the norm deviates from 1 by more than 1e-6.
  explicit StateVector(std::vector<Complex> amplitudes);

  unsigned n_bits() const { return n_bits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex operator[](std::size_t x) const { return amps_[x]; }

  // Single-qubit gate given row-major as {m00, m01, m10, m11}.
  void apply(unsigned qubit, const std::array<Complex, 4>& m);
  // Diagonal single-qubit gate diag(1, phase).
  void apply_phase(unsigned qubit, Complex phase);
  void h(unsigned qubit);
  void x(unsigned qubit);
  void z(unsigned qubit) { apply_phase(qubit, Complex(-1.0, 0.0)); }
  void s(unsigned qubit) { apply_phase(qubit, Complex(0.0, 1.0)); }
  void t(unsigned qubit);
  void cz(unsigned a, unsigned b);
  void cnot(unsigned control, unsigned target);

  // Born-rule distribution |amp_x|^2.
  DiscreteDistribution probabilities() const;

 private:
  void check_qubit(unsigned q) const;

  std::vector<Complex> amps_;
  unsigned n_bits_;
};

// Haar-random pure state: complex Gaussian amplitudes, normalized.
StateVector haar_random_state(unsigned n_bits, Rng& rng);

// Ensemble sum_i w_i |psi_i><psi_i|.
class PureMixture {
 public:
  struct Component {
    double weight;
    StateVector state;
  };

  explicit PureMixture(std::vector<Component> components);

  const std::vector<Component>& components() const { return components_; }
  unsigned n_bits() const { return components_.front().state.n_bits(); }

 private:
  std::vector<Component> components_;
};

DiscreteDistribution measurement_distribution(const PureMixture& m);
DiscreteDistribution measurement_distribution(const StateVector& s);

// Dense 2^n x 2^n density matrix, row-major.
class DensityMatrix {
 public:
  explicit DensityMatrix(const StateVector& pure);

  unsigned n_bits() const { return n_bits_; }
  std::size_t dim() const { return dim_; }
  Complex at(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
  double trace() const;

  // rho -> (1-p) rho + p Tr_q(rho) (x) I/2 on qubit q.
  void depolarize(unsigned qubit, double p);
  // Tr_q(rho) (x) I/2, the p = 1 case.
  void replace_with_maximally_mixed(unsigned qubit) { depolarize(qubit, 1.0); }

  // Diagonal <x|rho|x>.
  DiscreteDistribution diagonal() const;

 private:
  std::vector<Complex> data_;
  unsigned n_bits_;
  std::size_t dim_;
};

}  // namespace weakdistill
