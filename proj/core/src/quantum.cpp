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
#include "weakdistill/quantum.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace weakdistill {

namespace {

void check_bits(unsigned n_bits) {
  if (n_bits == 0 || n_bits > kMaxQubits) {
    throw std::invalid_argument("qubit count must lie in [1, 12], got " +
                                std::to_string(n_bits));
  }
}

}  // namespace

StateVector::StateVector(unsigned n_bits) : n_bits_(n_bits) {
  check_bits(n_bits);
  amps_.assign(std::size_t{1} << n_bits, Complex(0.0, 0.0));
  amps_[0] = 1.0;
}

StateVector::StateVector(std::vector<Complex> amplitudes)
    : amps_(std::move(amplitudes)), n_bits_(bits_for_size(amps_.size())) {
  check_bits(n_bits_);
  double norm = 0.0;
  for (const auto& a : amps_) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw std::invalid_argument("state vector is not normalized");
  }
  if (std::abs(norm - 1.0) > kSumTolerance) {
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& a : amps_) a *= scale;
  }
}

void StateVector::check_qubit(unsigned q) const {
  if (q >= n_bits_) throw std::out_of_range("qubit index out of range");
}

void StateVector::apply(unsigned qubit, const std::array<Complex, 4>& m) {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | bit];
    amps_[i] = m[0] * a0 + m[1] * a1;
    amps_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply_phase(unsigned qubit, Complex phase) {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) amps_[i] *= phase;
  }
}

void StateVector::h(unsigned qubit) {
  const double r = std::numbers::sqrt2 / 2.0;
  apply(qubit, {Complex(r), Complex(r), Complex(r), Complex(-r)});
}

void StateVector::x(unsigned qubit) {
  apply(qubit, {Complex(0.0), Complex(1.0), Complex(1.0), Complex(0.0)});
}

void StateVector::t(unsigned qubit) {
  apply_phase(qubit, std::polar(1.0, std::numbers::pi / 4.0));
}

void StateVector::cz(unsigned a, unsigned b) {
  check_qubit(a);
  check_qubit(b);
  if (a == b) throw std::invalid_argument("cz needs two distinct qubits");
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void StateVector::cnot(unsigned control, unsigned target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw std::invalid_argument("cnot needs two distinct qubits");
  const std::size_t c = std::size_t{1} << control;
  const std::size_t t = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
  }
}

DiscreteDistribution StateVector::probabilities() const {
  std::vector<double> probs(amps_.size());
  for (std::size_t x = 0; x < amps_.size(); ++x) probs[x] = std::norm(amps_[x]);
  return DiscreteDistribution(std::move(probs));
}

StateVector haar_random_state(unsigned n_bits, Rng& rng) {
  check_bits(n_bits);
  std::vector<Complex> amps(std::size_t{1} << n_bits);
  double norm = 0.0;
  for (auto& a : amps) {
    const double re = rng.normal();
    const double im = rng.normal();
    a = Complex(re, im);
    norm += re * re + im * im;
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amps) a *= scale;
  return StateVector(std::move(amps));
}

PureMixture::PureMixture(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("PureMixture: no components");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight >= 0.0 && c.weight <= 1.0)) {
      throw std::invalid_argument("PureMixture: weights must lie in [0, 1]");
    }
    if (c.state.n_bits() != components_.front().state.n_bits()) {
      throw std::invalid_argument("PureMixture: components differ in qubit count");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("PureMixture: weights do not sum to 1");
  }
}

DiscreteDistribution measurement_distribution(const PureMixture& m) {
  std::vector<double> probs(std::size_t{1} << m.n_bits(), 0.0);
  for (const auto& c : m.components()) {
    for (std::size_t x = 0; x < probs.size(); ++x) {
      probs[x] += c.weight * std::norm(c.state[x]);
    }
  }
  return DiscreteDistribution(std::move(probs));
}

DiscreteDistribution measurement_distribution(const StateVector& s) {
  return s.probabilities();
}

DensityMatrix::DensityMatrix(const StateVector& pure)
    : n_bits_(pure.n_bits()), dim_(pure.size()) {
  data_.resize(dim_ * dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      data_[r * dim_ + c] = pure[r] * std::conj(pure[c]);
    }
  }
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i].real();
  return t;
}

void DensityMatrix::depolarize(unsigned qubit, double p) {
  if (qubit >= n_bits_) throw std::out_of_range("qubit index out of range");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing p outside [0, 1]");
  const std::size_t bit = std::size_t{1} << qubit;
  std::vector<Complex> out(data_.size());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      Complex v = (1.0 - p) * data_[r * dim_ + c];
      if ((r & bit) == (c & bit)) {
        // Partial trace over the qubit, re-embedded with I/2.
        const std::size_t r0 = r & ~bit;
        const std::size_t c0 = c & ~bit;
        const Complex reduced = data_[r0 * dim_ + c0] + data_[(r0 | bit) * dim_ + (c0 | bit)];
        v += 0.5 * p * reduced;
      }
      out[r * dim_ + c] = v;
    }
  }
  data_ = std::move(out);
}

DiscreteDistribution DensityMatrix::diagonal() const {
  std::vector<double> probs(dim_);
  for (std::size_t i = 0; i < dim_; ++i) probs[i] = data_[i * dim_ + i].real();
  return DiscreteDistribution(std::move(probs));
}

}  // namespace weakdistill
