// Copyright 2026 The AFN Authors
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

// afn: build, query and evaluate robust furthest-neighbor indexes.
//
// Exit codes: 0 success, 1 gate failure (with --gate), 2 bad input or usage.

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "afn/config.h"
#include "afn/dataset_io.h"
#include "afn/distance_oracle.h"
#include "afn/error.h"
#include "afn/experiments.h"
#include "afn/generate.h"
#include "afn/index_io.h"
#include "afn/robust_index.h"

namespace {

using afn::ExperimentConfig;
using nlohmann::json;

constexpr int kExitGate = 1;
constexpr int kExitInput = 2;

// Options that override a config field only when given on the command line,
// so they can be layered on top of --config.
class ConfigFlags {
 public:
  template <typename T>
  void add(CLI::App* app, const std::string& flag, T ExperimentConfig::*field,
           const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    setters_.push_back([opt, value, field](ExperimentConfig& c) {
      if (opt->count() > 0) c.*field = *value;
    });
  }

  template <typename T>
  void add(CLI::App* app, const std::string& flag, std::optional<T> ExperimentConfig::*field,
           const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    setters_.push_back([opt, value, field](ExperimentConfig& c) {
      if (opt->count() > 0) c.*field = *value;
    });
  }

  void add_no_shortcut(CLI::App* app) {
    CLI::Option* opt = app->add_flag("--no-shortcut", "disable the trivial-query shortcut");
    setters_.push_back([opt](ExperimentConfig& c) {
      if (opt->count() > 0) c.shortcut = false;
    });
  }

  void apply(ExperimentConfig& c) const {
    for (const auto& s : setters_) s(c);
  }

 private:
  std::vector<std::function<void(ExperimentConfig&)>> setters_;
};

void add_common(CLI::App* app, ConfigFlags& flags) {
  flags.add(app, "--n", &ExperimentConfig::n, "number of points");
  flags.add(app, "--d", &ExperimentConfig::d, "dimension");
  flags.add(app, "--c", &ExperimentConfig::c, "approximation factor (> 1)");
  flags.add(app, "--eps", &ExperimentConfig::eps, "distance oracle error");
  flags.add(app, "--seed", &ExperimentConfig::seed, "master seed");
  flags.add(app, "--trials", &ExperimentConfig::trials, "queries, seeds or games");
  flags.add(app, "--const-N", &ExperimentConfig::const_N, "multiplier of N");
  flags.add(app, "--const-k", &ExperimentConfig::const_k, "multiplier of k");
  flags.add(app, "--const-m", &ExperimentConfig::const_m, "multiplier of m");
  flags.add(app, "--cN", &ExperimentConfig::c_N, "oblivious candidate constant");
  flags.add(app, "--N", &ExperimentConfig::N, "projections per base (overrides derivation)");
  flags.add(app, "--k", &ExperimentConfig::k, "number of bases (overrides derivation)");
  flags.add(app, "--m", &ExperimentConfig::m, "bases sampled per query (overrides derivation)");
  flags.add(app, "--oracle", &ExperimentConfig::oracle, "exact | perturbed");
  flags.add(app, "--dataset", &ExperimentConfig::dataset,
            "gaussian | clustered | attack | file:<path>");
  flags.add(app, "--output", &ExperimentConfig::output, "report path (default stdout)");
  flags.add_no_shortcut(app);
}

struct ExperimentCommand {
  CLI::App* app = nullptr;
  ConfigFlags flags;
  std::string config_path;
  bool gate = false;
};

void add_experiment(CLI::App& root, ExperimentCommand& cmd, const std::string& name,
                    const std::string& help) {
  cmd.app = root.add_subcommand(name, help);
  cmd.app->add_option("--config", cmd.config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  cmd.app->add_flag("--gate", cmd.gate, "exit 1 when the report's gate fails");
  add_common(cmd.app, cmd.flags);
}

ExperimentConfig resolve(const ExperimentCommand& cmd) {
  ExperimentConfig config =
      cmd.config_path.empty() ? ExperimentConfig{} : afn::load_config(cmd.config_path);
  cmd.flags.apply(config);
  return config;
}

void write_json(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw afn::InputError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

int finish(const json& report, const ExperimentConfig& config, bool gate) {
  write_json(report, config.output);
  const bool passed = afn::gate_passed(report);
  std::cerr << report["command"].get<std::string>() << ": gate "
            << (passed ? "passed" : "failed") << " ("
            << report["gate"]["rule"].get<std::string>() << ")\n";
  return gate && !passed ? kExitGate : 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Adversarially robust approximate furthest neighbor search"};
  app.require_subcommand(1);

  // build
  ExperimentConfig build_cfg;
  ConfigFlags build_flags;
  std::string build_data;
  std::string build_save;
  std::string build_index;
  CLI::App* build = app.add_subcommand("build", "build a robust index and persist it");
  build->add_option("--data", build_data, "dataset file (AFND or CSV)")->check(CLI::ExistingFile);
  build->add_option("--save-data", build_save, "write the dataset as AFND");
  build->add_option("--index", build_index, "output index path")->required();
  add_common(build, build_flags);

  // query
  std::string query_data;
  std::string query_index;
  std::string query_points;
  std::string query_output;
  std::string query_oracle = "exact";
  double query_eps = 0.0;
  std::uint64_t query_seed = 1;
  CLI::App* query = app.add_subcommand("query", "answer queries against a persisted index");
  query->add_option("--data", query_data, "dataset file the index was built on")
      ->required()
      ->check(CLI::ExistingFile);
  query->add_option("--index", query_index, "index file")->required()->check(CLI::ExistingFile);
  query->add_option("--queries", query_points, "query points (AFND or CSV)")
      ->required()
      ->check(CLI::ExistingFile);
  query->add_option("--seed", query_seed, "seed for per-query randomness");
  query->add_option("--oracle", query_oracle, "exact | perturbed");
  query->add_option("--eps", query_eps, "error of the perturbed oracle");
  query->add_option("--output", query_output, "JSON lines output (default stdout)");

  ExperimentCommand bench;
  add_experiment(app, bench, "bench", "query accuracy and latency of the robust index");
  ExperimentCommand attack;
  add_experiment(app, attack, "attack", "white-box attack on the oblivious baseline");
  attack.flags.add(attack.app, "--mode", &ExperimentConfig::mode, "certified | paper");
  attack.flags.add(attack.app, "--x", &ExperimentConfig::x, "fixed attack offset");
  attack.flags.add(attack.app, "--ranking", &ExperimentConfig::ranking, "absolute | signed");
  ExperimentCommand duel;
  add_experiment(app, duel, "duel", "adaptive adversary against an index");
  duel.flags.add(duel.app, "--target", &ExperimentConfig::target, "robust | oblivious");
  duel.flags.add(duel.app, "--strategy", &ExperimentConfig::strategy,
                 "random | whitebox_attack | probe");
  duel.flags.add(duel.app, "--T", &ExperimentConfig::rounds, "rounds per game");
  duel.flags.add(duel.app, "--transcript", &ExperimentConfig::transcript,
                 "JSON lines transcript path");
  duel.flags.add(duel.app, "--ranking", &ExperimentConfig::ranking,
                 "ranking of the oblivious target");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (build->parsed()) {
    build_flags.apply(build_cfg);
    if (!build_data.empty()) build_cfg.dataset = "file:" + build_data;
    auto points = std::make_shared<const afn::Dataset>(
        afn::gen_dataset(afn::parse_dataset_spec(build_cfg.dataset), build_cfg.n, build_cfg.d,
                         afn::RngStream{build_cfg.seed, 1}.derive(0)));
    const afn::Params params = afn::derive_params(points->size(), points->dim(), build_cfg.c,
                                                  build_cfg.eps, build_cfg.overrides());
    std::cerr << "estimated index size: "
              << afn::estimate_index_bytes(points->size(), points->dim(), params) << " bytes\n";
    const afn::RobustIndex index = afn::build_robust(points, params, build_cfg.seed);
    if (!build_save.empty()) afn::save_dataset(*points, build_save);
    afn::save_index(index, build_index);
    json summary = {{"n", points->size()},   {"d", points->dim()},
                    {"N", params.N},         {"k", params.k},
                    {"m", params.m},         {"t", params.t},
                    {"p_hat", index.p_hat().size()}, {"index", build_index}};
    write_json(summary, build_cfg.output);
    return 0;
  }

  if (query->parsed()) {
    auto points = std::make_shared<const afn::Dataset>(afn::load_dataset(query_data));
    const afn::RobustIndex index = afn::load_index(query_index, points);
    const afn::Dataset queries = afn::load_dataset(query_points);
    std::unique_ptr<afn::DistanceOracle> oracle;
    if (query_oracle == "exact") {
      oracle = std::make_unique<afn::ExactOracle>();
    } else if (query_oracle == "perturbed") {
      oracle = std::make_unique<afn::PerturbedOracle>(query_eps, query_seed);
    } else {
      throw afn::InputError("unknown oracle '" + query_oracle + "'");
    }
    std::ofstream file;
    if (!query_output.empty()) {
      file.open(query_output);
      if (!file) throw afn::InputError("cannot open " + query_output + " for writing");
    }
    std::ostream& out = query_output.empty() ? std::cout : file;
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const afn::QueryAnswer a = afn::query(index, queries.point(i),
                                            afn::RngStream{query_seed, 3}.derive(i), *oracle);
      out << json{{"query", i},
                  {"point_id", a.point_id},
                  {"distance", a.reported_distance},
                  {"trivial", a.trivial},
                  {"sampled_indices", a.sampled_indices}}
                 .dump()
          << '\n';
    }
    return 0;
  }

  if (bench.app->parsed()) {
    const ExperimentConfig config = resolve(bench);
    return finish(afn::run_bench(config), config, bench.gate);
  }
  if (attack.app->parsed()) {
    ExperimentConfig config = resolve(attack);
    return finish(afn::run_attack(config), config, attack.gate);
  }
  if (duel.app->parsed()) {
    const ExperimentConfig config = resolve(duel);
    std::ofstream transcript;
    if (!config.transcript.empty()) {
      transcript.open(config.transcript);
      if (!transcript) throw afn::InputError("cannot open " + config.transcript);
    }
    return finish(afn::run_duel(config, config.transcript.empty() ? nullptr : &transcript),
                  config, duel.gate);
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const afn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return kExitInput;
  }
}
