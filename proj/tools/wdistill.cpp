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
// Command line front end: run sweeps, evaluate bounds, export scenarios.
//
//   wdistill run --config <path> [overrides]
//   wdistill bounds --config <path> [overrides]
//   wdistill scenario export --name <s> --seed <k> [--out <path>]
//
// Config files use TOML/INI key = value syntax. Every key is also a flag
// (sample_grid <-> --sample-grid), and flags take precedence over the file.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weakdistill/bounds.hpp"
#include "weakdistill/errors.hpp"
#include "weakdistill/harness.hpp"
#include "weakdistill/scenarios.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

struct ScenarioOptions {
  std::string name = "isotropic";
  std::uint64_t seed = 1;
  std::optional<unsigned> n_qubits;
  std::optional<unsigned> n_pairs;
  std::optional<unsigned> t_count;
  std::optional<double> p;

  weakdistill::ScenarioSpec spec() const {
    auto s = weakdistill::default_scenario(name, seed);
    if (n_qubits) s.n_qubits = *n_qubits;
    if (n_pairs) s.n_pairs = *n_pairs;
    if (t_count) s.t_count = *t_count;
    if (p) s.p = *p;
    return s;
  }
};

struct ExperimentOptions {
  ScenarioOptions scenario;
  std::optional<std::string> scenario_file;
  std::vector<std::string> methods = {"rejection", "estimation"};
  std::vector<std::uint64_t> sample_grid = {0, 10, 100, 1000, 10000, 100000};
  unsigned trials = 20;
  double delta = 0.1;
  std::vector<double> epsilon_grid = {0.1};
  unsigned threads = 0;

  weakdistill::ExperimentConfig config() const {
    weakdistill::ExperimentConfig cfg;
    cfg.scenario = scenario.spec();
    cfg.scenario_file = scenario_file;
    cfg.methods.clear();
    for (const auto& m : methods) cfg.methods.push_back(weakdistill::parse_method(m));
    cfg.sample_grid = sample_grid;
    cfg.trials = trials;
    cfg.delta = delta;
    cfg.epsilon_grid = epsilon_grid;
    cfg.threads = threads;
    cfg.validate();
    return cfg;
  }
};

void add_scenario_options(CLI::App* app, ScenarioOptions& o) {
  app->add_option("--scenario,--name", o.name, "depolarizing | isotropic | iqp")
      ->check(CLI::IsMember({"depolarizing", "isotropic", "iqp"}));
  app->add_option("--seed", o.seed, "Scenario and trial seed");
  app->add_option("--n-qubits,--n_qubits", o.n_qubits, "Qubits (depolarizing, iqp)");
  app->add_option("--n-pairs,--n_pairs", o.n_pairs, "Bell pairs (isotropic)");
  app->add_option("--t-count,--t_count", o.t_count, "T gates (iqp)");
  app->add_option("--p", o.p, "Noise / decomposition parameter");
}

void add_experiment_options(CLI::App* app, ExperimentOptions& o, std::string& config_path) {
  app->add_option("--config", config_path, "Key-value config file (TOML/INI syntax)");
  add_scenario_options(app, o.scenario);
  app->add_option("--scenario-file,--scenario_file", o.scenario_file,
                  "Replay an exported scenario JSON");
  app->add_option("--methods", o.methods, "rejection and/or estimation");
  app->add_option("--sample-grid,--sample_grid", o.sample_grid, "Sample budgets N");
  app->add_option("--trials", o.trials, "Trials per budget");
  app->add_option("--delta", o.delta, "Failure probability");
  app->add_option("--epsilon-grid,--epsilon_grid", o.epsilon_grid,
                  "Target accuracies for the bound report");
  app->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

// Loads key = value pairs from a config file into the subcommand's options.
// Options already given on the command line keep their values.
void apply_config(CLI::App* app, const std::string& path) {
  if (path.empty()) return;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::FileError& e) {
    throw std::invalid_argument(e.what());
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    CLI::Option* opt = app->get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config") {
      throw std::invalid_argument("unknown config key '" + item.fullname() + "'");
    }
    if (opt->count() > 0) continue;
    try {
      opt->add_result(item.inputs);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw std::invalid_argument("config key '" + item.name + "': " + e.what());
    }
  }
}

void write_file(const std::string& path, const std::string& what,
                const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open " + what + " output " + path);
  writer(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak resource distillation: rejection sampling from quasi-probability mixtures"};
  app.require_subcommand(1);

  ExperimentOptions run_opts;
  std::string raw_out = "tvd_raw.csv";
  std::string agg_out = "tvd_mean.csv";
  auto* run = app.add_subcommand("run", "Sweep sample budgets and record TVD per trial");
  std::string run_config;
  add_experiment_options(run, run_opts, run_config);
  run->add_option("--raw-out,--raw_out", raw_out, "Per-trial CSV");
  run->add_option("--agg-out,--agg_out", agg_out, "Mean-over-trials CSV");

  ExperimentOptions bound_opts;
  std::string bounds_out = "bounds.csv";
  std::string report_out = "bound_report.json";
  auto* bounds = app.add_subcommand("bounds", "Evaluate sample-cost bounds and bound curves");
  std::string bounds_config;
  add_experiment_options(bounds, bound_opts, bounds_config);
  bounds->add_option("--bounds-out,--bounds_out", bounds_out, "Implied-epsilon curve CSV");
  bounds->add_option("--report-out,--report_out", report_out, "Bound report JSON");

  auto* scenario = app.add_subcommand("scenario", "Scenario utilities");
  scenario->require_subcommand(1);
  ScenarioOptions export_opts;
  std::string export_out = "-";
  auto* export_cmd = scenario->add_subcommand("export", "Write a scenario instance as JSON");
  add_scenario_options(export_cmd, export_opts);
  export_cmd->add_option("--out", export_out, "Output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (*run) {
      apply_config(run, run_config);
      const auto cfg = run_opts.config();
      const auto curve = weakdistill::run_experiment(cfg);
      write_file(raw_out, "raw", [&](std::ostream& o) { weakdistill::write_raw_csv(o, curve); });
      write_file(agg_out, "aggregate",
                 [&](std::ostream& o) { weakdistill::write_aggregate_csv(o, curve); });
      weakdistill::write_aggregate_csv(std::cout, curve);
    } else if (*bounds) {
      apply_config(bounds, bounds_config);
      const auto cfg = bound_opts.config();
      const auto sc = weakdistill::load_scenario(cfg);
      nlohmann::json report{{"scenario", sc.spec.name},
                            {"seed", sc.spec.seed},
                            {"gamma", sc.decomposition.gamma()},
                            {"c_minus", sc.decomposition.c_minus()},
                            {"reports", nlohmann::json::array()}};
      for (double eps : cfg.epsilon_grid) {
        const auto in = weakdistill::bound_inputs(sc.decomposition, eps, cfg.delta);
        report["reports"].push_back(weakdistill::evaluate_bounds(in));
      }
      const auto points = weakdistill::bound_curves(cfg, sc);
      write_file(bounds_out, "bounds",
                 [&](std::ostream& o) { weakdistill::write_bound_csv(o, points); });
      write_file(report_out, "report", [&](std::ostream& o) { o << report.dump(2) << '\n'; });
      std::cout << report.dump(2) << '\n';
    } else if (*export_cmd) {
      const auto sc = weakdistill::build_scenario(export_opts.spec());
      const std::string text = weakdistill::scenario_to_json(sc).dump(2);
      if (export_out == "-") {
        std::cout << text << '\n';
      } else {
        write_file(export_out, "scenario", [&](std::ostream& o) { o << text << '\n'; });
      }
    }
  } catch (const weakdistill::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return 0;
}
