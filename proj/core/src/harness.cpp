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
#include "weakdistill/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "weakdistill/bounds.hpp"
#include "weakdistill/errors.hpp"
#include "weakdistill/estimation.hpp"
#include "weakdistill/weak_distill.hpp"

namespace weakdistill {

namespace {

constexpr double kMinEpsilon = 1e-6;
constexpr int kEpsilonScanPoints = 121;
constexpr double kBisectionTolerance = 1e-6;

// Runs job(i) for i in [0, n) on up to 'threads' workers. The first exception
// thrown by any job is rethrown on the caller's thread.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          try {
            job(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

double rejection_tvd(const DiscreteDistribution& p, const DiscreteDistribution& q,
                     const AcceptanceTable& table) {
  if (!(acceptance_probability(q, table.ratios()) > 1e-12)) return 1.0;
  return tvd(p, output_distribution(q, table.ratios()));
}

}  // namespace

std::string_view method_name(Method m) {
  return m == Method::kRejection ? "rejection" : "estimation";
}

Method parse_method(std::string_view name) {
  if (name == "rejection") return Method::kRejection;
  if (name == "estimation") return Method::kEstimation;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (sample_grid.empty()) throw std::invalid_argument("sample_grid is empty");
  for (std::size_t i = 1; i < sample_grid.size(); ++i) {
    if (sample_grid[i] <= sample_grid[i - 1]) {
      throw std::invalid_argument("sample_grid must be strictly increasing");
    }
  }
  if (methods.empty()) throw std::invalid_argument("no methods selected");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  for (double e : epsilon_grid) {
    if (!(e > 0.0)) throw std::invalid_argument("epsilon_grid entries must be positive");
  }
}

double TvdCurve::mean_tvd(Method m, std::uint64_t n_samples) const {
  for (const auto& a : aggregates) {
    if (a.method == m && a.n_samples == n_samples) return a.mean_tvd;
  }
  throw std::out_of_range("no aggregate for the requested method and budget");
}

Scenario load_scenario(const ExperimentConfig& cfg) {
  if (cfg.scenario_file) {
    std::ifstream in(*cfg.scenario_file);
    if (!in) throw std::invalid_argument("cannot open scenario file " + *cfg.scenario_file);
    return scenario_from_json(nlohmann::json::parse(in));
  }
  return build_scenario(cfg.scenario);
}

TvdCurve run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_experiment(cfg, load_scenario(cfg));
}

TvdCurve run_experiment(const ExperimentConfig& cfg, const Scenario& scenario) {
  cfg.validate();
  const QuasiDecomposition& d = scenario.decomposition;
  const DiscreteDistribution p = target(d).to_distribution();
  const DiscreteDistribution q = mixture(d);
  const bool want_rejection =
      std::find(cfg.methods.begin(), cfg.methods.end(), Method::kRejection) != cfg.methods.end();
  const bool want_estimation =
      std::find(cfg.methods.begin(), cfg.methods.end(), Method::kEstimation) != cfg.methods.end();
  const std::string& name = scenario.spec.name;
  const std::uint64_t seed = scenario.spec.seed;

  const std::size_t per_trial = cfg.sample_grid.size() * cfg.methods.size();
  std::vector<TvdRow> rows(per_trial * cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t trial) {
    Rng rng(seed, trial);
    SignedCounts counts;
    std::size_t slot = trial * per_trial;
    for (const std::uint64_t budget : cfg.sample_grid) {
      extend_tally(d, budget - counts.total, rng, counts);
      const auto t = static_cast<unsigned>(trial);
      if (want_rejection) {
        const AcceptanceTable table(counts.plus, counts.minus);
        rows[slot++] = {name, Method::kRejection, budget, t, seed, rejection_tvd(p, q, table)};
      }
      if (want_estimation) {
        const auto estimate = estimate_from_counts(d, counts);
        rows[slot++] = {name, Method::kEstimation, budget, t, seed,
                        tvd(p, estimate.clipped_normalized)};
      }
    }
  });

  std::sort(rows.begin(), rows.end(), [](const TvdRow& a, const TvdRow& b) {
    return std::make_tuple(a.scenario, method_name(a.method), a.n_samples, a.trial) <
           std::make_tuple(b.scenario, method_name(b.method), b.n_samples, b.trial);
  });

  TvdCurve curve;
  curve.rows = std::move(rows);
  for (std::size_t i = 0; i < curve.rows.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < curve.rows.size() && curve.rows[j].method == curve.rows[i].method &&
           curve.rows[j].n_samples == curve.rows[i].n_samples) {
      sum += curve.rows[j].tvd;
      ++j;
    }
    curve.aggregates.push_back({curve.rows[i].scenario, curve.rows[i].method,
                                curve.rows[i].n_samples, sum / static_cast<double>(j - i)});
    i = j;
  }
  return curve;
}

double implied_epsilon(const std::function<double(double)>& bound, double n) {
  if (!(n >= 1.0)) return 1.0;
  const double log_min = std::log(kMinEpsilon);
  double previous = 0.0;
  for (int i = 0; i < kEpsilonScanPoints; ++i) {
    const double eps = std::exp(log_min * (1.0 - i / (kEpsilonScanPoints - 1.0)));
    if (bound(eps) <= n) {
      if (i == 0) return eps;
      double lo = previous;
      double hi = eps;
      while (hi - lo > kBisectionTolerance * hi) {
        const double mid = 0.5 * (lo + hi);
        (bound(mid) <= n ? hi : lo) = mid;
      }
      return std::min(hi, 1.0);
    }
    previous = eps;
  }
  return 1.0;
}

std::vector<BoundCurvePoint> bound_curves(const ExperimentConfig& cfg, const Scenario& scenario) {
  cfg.validate();
  const BoundInputs base = bound_inputs(scenario.decomposition, 0.1, cfg.delta);
  const auto at = [base](double eps) {
    BoundInputs in = base;
    in.epsilon = eps;
    return in;
  };
  const std::function<double(double)> rejection = [&](double eps) {
    return evaluate_bounds(at(eps)).tightest_rejection();
  };
  const std::function<double(double)> estimation = [&](double eps) {
    return bound_estimation(at(eps));
  };

  std::vector<BoundCurvePoint> points;
  for (const Method m : {Method::kEstimation, Method::kRejection}) {
    if (std::find(cfg.methods.begin(), cfg.methods.end(), m) == cfg.methods.end()) continue;
    std::vector<BoundCurvePoint> block(cfg.sample_grid.size());
    parallel_for(cfg.sample_grid.size(), cfg.threads, [&](std::size_t i) {
      const auto n = static_cast<double>(cfg.sample_grid[i]);
      const double eps = implied_epsilon(m == Method::kRejection ? rejection : estimation, n);
      block[i] = {scenario.spec.name, m, cfg.sample_grid[i], eps};
    });
    points.insert(points.end(), block.begin(), block.end());
  }
  return points;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_raw_csv(std::ostream& out, const TvdCurve& curve) {
  out << "scenario,method,n_samples,trial,seed,tvd\n";
  for (const auto& r : curve.rows) {
    out << r.scenario << ',' << method_name(r.method) << ',' << r.n_samples << ',' << r.trial
        << ',' << r.seed << ',' << format_real(r.tvd) << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const TvdCurve& curve) {
  out << "scenario,method,n_samples,mean_tvd\n";
  for (const auto& a : curve.aggregates) {
    out << a.scenario << ',' << method_name(a.method) << ',' << a.n_samples << ','
        << format_real(a.mean_tvd) << '\n';
  }
}

void write_bound_csv(std::ostream& out, const std::vector<BoundCurvePoint>& points) {
  out << "scenario,method,n_samples,implied_epsilon\n";
  for (const auto& p : points) {
    out << p.scenario << ',' << method_name(p.method) << ',' << p.n_samples << ','
        << format_real(p.implied_epsilon) << '\n';
  }
}

}  // namespace weakdistill
