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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "weakdistill/distributions.hpp"
#include "weakdistill/errors.hpp"
#include "weakdistill/weak_distill.hpp"

namespace weakdistill {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kCoarsePoints = 99;
constexpr int kFallbackPoints = 10000;
constexpr double kGoldenTolerance = 1e-6;

double error_prefactor(double epsilon) {
  const double r = (1.0 + epsilon) / epsilon;
  return r * r;
}

double retry_term(const BoundInputs& in, double delta2) {
  return static_cast<double>(retry_budget(in.gamma, in.c_minus, in.epsilon, delta2));
}

double safe_eval(const std::function<double(double, double)>& f, double delta, double t) {
  const double d1 = delta * t;
  const double d2 = complementary_delta(delta, d1);
  if (!(d1 > 0.0) || !(d2 > 0.0)) return kInf;
  const double v = f(d1, d2);
  return std::isnan(v) ? kInf : v;
}

// Accepts plateaus: the sequence must not rise and then fall again.
bool is_unimodal(const std::vector<double>& v) {
  bool rising = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double scale = std::max({1.0, std::abs(v[i]), std::abs(v[i - 1])});
    if (v[i] > v[i - 1] + 1e-12 * scale) {
      rising = true;
    } else if (rising && v[i] < v[i - 1] - 1e-12 * scale) {
      return false;
    }
  }
  return true;
}

}  // namespace

void BoundInputs::validate() const {
  if (!(gamma >= 1.0) || !(c_minus >= 0.0)) {
    throw std::invalid_argument("BoundInputs: need gamma >= 1 and c_minus >= 0");
  }
  if (std::abs(gamma - (1.0 + 2.0 * c_minus)) > 1e-9) {
    throw std::invalid_argument("BoundInputs: gamma must equal 1 + 2 c_minus");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("BoundInputs: epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("BoundInputs: delta must lie in (0, 1)");
  }
  if (!(h_half_q >= 0.0) || !(h_half_p_minus >= 0.0) || !(h_half_p_plus >= 0.0) ||
      !(s_quantity >= 0.0)) {
    throw std::invalid_argument("BoundInputs: entropies and S must be nonnegative");
  }
}

double s_quantity(const QuasiDecomposition& d) {
  const double cp = d.c_plus();
  const double cm = d.c_minus();
  double acc = 0.0;
  for (std::size_t x = 0; x < d.size(); ++x) {
    const double pp = d.sigma_plus()[x];
    const double pm = d.sigma_minus()[x];
    const double denom = cp * pp + cm * pm;
    if (denom <= 0.0) continue;
    acc += std::sqrt(cp * cm * pp * pm / denom);
  }
  return acc * acc;
}

BoundInputs bound_inputs(const QuasiDecomposition& d, double epsilon, double delta) {
  BoundInputs in;
  in.gamma = d.gamma();
  in.c_minus = d.c_minus();
  in.epsilon = epsilon;
  in.delta = delta;
  in.h_half_q = renyi_entropy(mixture(d), 0.5);
  in.h_half_p_minus = renyi_entropy(d.sigma_minus(), 0.5);
  in.h_half_p_plus = renyi_entropy(d.sigma_plus(), 0.5);
  in.s_quantity = s_quantity(d);
  in.validate();
  return in;
}

double bound_estimation(const BoundInputs& in) {
  in.validate();
  const double a = std::exp2(0.5 * in.h_half_q) + std::sqrt(8.0 * std::log(2.0 / in.delta));
  return in.gamma * in.gamma / (4.0 * in.epsilon * in.epsilon) * a * a;
}

double complementary_delta(double delta, double delta1) {
  return 1.0 - (1.0 - delta) / (1.0 - delta1);
}

namespace {

// Golden-section search for the minimum of f(t) on [lo, hi].
double golden_section(const std::function<double(double)>& f, double lo, double hi) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - phi * (hi - lo);
  double b = lo + phi * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  while (hi - lo > kGoldenTolerance * std::max(hi, 1e-300)) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - phi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + phi * (hi - lo);
      fb = f(b);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Split optimize_split(const std::function<double(double, double)>& objective, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("optimize_split: delta must lie in (0, 1)");
  }
  // Search over t = delta1/delta in (0, 1).
  const std::function<double(double)> f = [&](double t) { return safe_eval(objective, delta, t); };
  const auto scan = [&](int points) {
    std::vector<double> values(points);
    for (int i = 0; i < points; ++i) values[i] = f((i + 1.0) / (points + 1.0));
    return values;
  };

  std::vector<double> values = scan(kCoarsePoints);
  const bool finite = std::all_of(values.begin(), values.end(),
                                  [](double v) { return std::isfinite(v); });
  if (!finite || !is_unimodal(values)) values = scan(kFallbackPoints);

  const auto points = static_cast<int>(values.size());
  const auto i = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
  double best_t = (i + 1.0) / (points + 1.0);
  double best_v = values[i];
  if (!std::isfinite(best_v)) {
    throw NumericalError("optimize_split: objective is not finite on any feasible split");
  }
  // Refine inside the bracket around the best scan point.
  const double t = golden_section(f, i / (points + 1.0), (i + 2.0) / (points + 1.0));
  if (const double v = f(t); v <= best_v) {
    best_t = t;
    best_v = v;
  }
  const double d1 = delta * best_t;
  return Split{d1, complementary_delta(delta, d1)};
}

double bound_rejection_at(const BoundInputs& in, int variant, double delta1) {
  const double delta2 = complementary_delta(in.delta, delta1);
  if (!(delta1 > 0.0 && delta1 < in.delta) || !(delta2 > 0.0)) {
    throw std::invalid_argument("bound_rejection_at: infeasible split");
  }
  const double pref = 8.0 * in.gamma * error_prefactor(in.epsilon);
  const double cm = in.c_minus;
  const double cp = in.c_plus();
  double first = 0.0;
  switch (variant) {
    case 1: {
      const double a = std::sqrt(in.s_quantity) + std::sqrt(cm / delta1);
      first = pref * a * a;
      break;
    }
    case 2: {
      const double a = std::exp2(0.5 * in.h_half_p_minus) + 1.0 / std::sqrt(delta1);
      first = pref * cm * a * a;
      break;
    }
    case 3: {
      const double a = std::exp2(0.5 * in.h_half_p_plus) + std::sqrt(cm / (cp * delta1));
      first = pref * cp * a * a;
      break;
    }
    default:
      throw std::invalid_argument("bound_rejection: variant must be 1, 2 or 3");
  }
  return first + retry_term(in, delta2);
}

SplitBound bound_rejection(const BoundInputs& in, int variant) {
  in.validate();
  if (variant < 1 || variant > 3) {
    throw std::invalid_argument("bound_rejection: variant must be 1, 2 or 3");
  }
  const Split split = optimize_split(
      [&](double d1, double) { return bound_rejection_at(in, variant, d1); }, in.delta);
  return SplitBound{bound_rejection_at(in, variant, split.delta1), split.delta1, split.delta2};
}

double bound_alternative_at(const BoundInputs& in, double delta1) {
  const double delta2 = complementary_delta(in.delta, delta1);
  if (!(delta1 > 0.0 && delta1 < in.delta) || !(delta2 > 0.0)) {
    throw std::invalid_argument("bound_alternative_at: infeasible split");
  }
  const double a = std::exp2(0.5 * in.h_half_q) +
                   std::sqrt((2.0 / kAlternativeV) * std::log(1.0 / delta1));
  return 2.0 * in.gamma * in.gamma * error_prefactor(in.epsilon) * a * a +
         retry_term(in, delta2);
}

SplitBound bound_alternative(const BoundInputs& in) {
  in.validate();
  const Split split = optimize_split(
      [&](double d1, double) { return bound_alternative_at(in, d1); }, in.delta);
  return SplitBound{bound_alternative_at(in, split.delta1), split.delta1, split.delta2};
}

double BoundReport::tightest_rejection() const {
  double best = alt_bound.value;
  for (const auto& b : rejection_bounds) best = std::min(best, b.value);
  return best;
}

BoundReport evaluate_bounds(const BoundInputs& in) {
  in.validate();
  BoundReport r;
  r.epsilon = in.epsilon;
  r.delta = in.delta;
  r.estimation_bound = bound_estimation(in);
  for (int v = 1; v <= 3; ++v) r.rejection_bounds[v - 1] = bound_rejection(in, v);
  r.alt_bound = bound_alternative(in);
  r.retry_m = retry_budget(in.gamma, in.c_minus, in.epsilon, r.rejection_bounds[1].delta2);
  return r;
}

void to_json(nlohmann::json& j, const SplitBound& b) {
  j = nlohmann::json{{"value", b.value}, {"delta1", b.delta1}, {"delta2", b.delta2}};
}

void to_json(nlohmann::json& j, const BoundReport& r) {
  j = nlohmann::json{
      {"epsilon", r.epsilon},
      {"delta", r.delta},
      {"estimation_bound", r.estimation_bound},
      {"rejection_bounds",
       {{"variant_1", r.rejection_bounds[0]},
        {"variant_2", r.rejection_bounds[1]},
        {"variant_3", r.rejection_bounds[2]}}},
      {"alt_bound", r.alt_bound},
      {"retry_m", r.retry_m},
  };
}

}  // namespace weakdistill
