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

#include "afn/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>

#include "afn/adaptive.h"
#include "afn/attack.h"
#include "afn/distance_oracle.h"
#include "afn/error.h"
#include "afn/exact.h"
#include "afn/generate.h"
#include "afn/oblivious.h"
#include "afn/parallel.h"
#include "afn/robust_index.h"
#include "afn/stats.h"

namespace afn {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// JSON has no infinity.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Stream families; dataset generation, queries and query randomness never
// share a stream with each other or with the index build.
RngStream dataset_stream(std::uint64_t seed) { return RngStream{seed, 1}.derive(0); }
RngStream query_point_stream(std::uint64_t seed) { return RngStream{seed, 2}; }
RngStream query_fresh_stream(std::uint64_t seed) { return RngStream{seed, 3}; }
RngStream attack_stream(std::uint64_t seed) { return RngStream{seed, 4}; }
RngStream duel_stream(std::uint64_t seed) { return RngStream{seed, 5}; }
RngStream oblivious_stream(std::uint64_t seed) { return RngStream{seed, 6}; }

std::shared_ptr<const Dataset> make_dataset(const ExperimentConfig& config) {
  return std::make_shared<const Dataset>(
      gen_dataset(parse_dataset_spec(config.dataset), config.n, config.d,
                  dataset_stream(config.seed)));
}

json dataset_json(const Dataset& points) {
  return {{"n", points.size()}, {"d", points.dim()}, {"fingerprint", hex64(points.fingerprint())}};
}

json params_json(const Params& p) {
  return {{"c", p.c},
          {"eps", p.eps},
          {"delta", p.delta},
          {"t", p.t},
          {"N", p.N},
          {"k", p.k},
          {"m", p.m},
          {"const_N", p.const_N},
          {"const_k", p.const_k},
          {"const_m", p.const_m},
          {"c_N", p.c_N},
          {"candidates", p.candidates()},
          {"shortcut", p.shortcut}};
}

json stats_json(const DatasetStats& s) {
  return {{"box_width", s.box_width}, {"diameter", s.diameter}, {"radius", s.radius}};
}

json report_header(const char* command, const ExperimentConfig& config) {
  return {{"schema_version", kReportSchemaVersion},
          {"command", command},
          {"config", config_to_json(config)}};
}

std::unique_ptr<DistanceOracle> make_oracle(const ExperimentConfig& config) {
  if (config.oracle == "exact") return std::make_unique<ExactOracle>();
  if (config.oracle == "perturbed") {
    return std::make_unique<PerturbedOracle>(config.eps, config.seed);
  }
  throw InputError("unknown oracle '" + config.oracle + "' (expected exact or perturbed)");
}

Ranking parse_ranking(const std::string& name) {
  if (name == "absolute") return Ranking::kAbsolute;
  if (name == "signed") return Ranking::kSigned;
  throw InputError("unknown ranking '" + name + "' (expected absolute or signed)");
}

AttackMode parse_mode(const std::string& name) {
  if (name == "certified") return AttackMode::kCertified;
  if (name == "paper") return AttackMode::kPaper;
  throw InputError("unknown attack mode '" + name + "' (expected certified or paper)");
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::min(values.size(), std::max<std::size_t>(idx, 1)) - 1];
}

}  // namespace

json run_bench(const ExperimentConfig& config) {
  const std::size_t trials = config.trials_or(1000);
  auto points = make_dataset(config);
  const Params params =
      derive_params(points->size(), points->dim(), config.c, config.eps, config.overrides());
  const std::unique_ptr<DistanceOracle> oracle = make_oracle(config);

  auto start = Clock::now();
  DatasetStats stats = compute_stats(*points, params.c);
  const double stats_s = seconds_since(start);
  start = Clock::now();
  const RobustIndex index = build_robust(points, params, config.seed, stats);
  const double build_s = seconds_since(start);

  // Queries: a spherical Gaussian around the box centre with per-coordinate
  // spread bw/4, so most land inside the data's bounding box.
  const double spread = stats.box_width > 0.0 ? stats.box_width / 4.0 : 1.0;
  std::vector<Round> rounds(trials);
  std::vector<double> query_s(trials);
  std::vector<char> trivial(trials);
  parallel_for(trials, [&](std::size_t i) {
    Rng rng(query_point_stream(config.seed).derive(i));
    Point q(stats.center);
    for (double& x : q) x += spread * rng.normal();
    const auto t0 = Clock::now();
    const QueryAnswer ans = query(index, q, query_fresh_stream(config.seed).derive(i), *oracle);
    query_s[i] = seconds_since(t0);
    trivial[i] = ans.trivial;
    rounds[i] = score_round(*points, q, ans.point_id, params.c, oracle->eps());
  });

  std::size_t violations = 0;
  std::size_t trivial_count = 0;
  double ratio_max = 1.0;
  double ratio_sum = 0.0;
  json ratios = json::array();
  for (std::size_t i = 0; i < trials; ++i) {
    violations += rounds[i].violated;
    trivial_count += trivial[i] != 0;
    ratio_max = std::max(ratio_max, rounds[i].ratio);
    ratio_sum += rounds[i].ratio;
    ratios.push_back(finite_or_null(rounds[i].ratio));
  }
  const auto allowed = static_cast<std::size_t>(std::floor(0.01 * static_cast<double>(trials)));
  double mean_s = 0.0;
  for (double s : query_s) mean_s += s;
  mean_s /= static_cast<double>(trials);

  json report = report_header("bench", config);
  report["dataset"] = dataset_json(*points);
  report["params"] = params_json(params);
  report["stats"] = stats_json(stats);
  report["memory_estimate_bytes"] = estimate_index_bytes(points->size(), points->dim(), params);
  report["results"] = {{"trials", trials},
                       {"violation_count", violations},
                       {"trivial_count", trivial_count},
                       {"p_hat_size", index.p_hat().size()},
                       {"ratio_max", finite_or_null(ratio_max)},
                       {"ratio_mean", finite_or_null(ratio_sum / static_cast<double>(trials))},
                       {"ratios", std::move(ratios)}};
  report["gate"] = {{"rule", "violation_count <= floor(0.01 * trials)"},
                    {"allowed_violations", allowed},
                    {"passed", violations <= allowed}};
  report["timings"] = {{"stats_s", stats_s},
                       {"build_s", build_s},
                       {"query_mean_s", mean_s},
                       {"query_p99_s", percentile(query_s, 0.99)}};
  return report;
}

json run_attack(const ExperimentConfig& config) {
  const std::size_t trials = config.trials_or(100);
  const AttackMode mode = parse_mode(config.mode);
  const Ranking ranking = parse_ranking(config.ranking);
  auto points = std::make_shared<const Dataset>(build_attack_dataset(config.n, config.d));
  const std::size_t n = points->size();
  const std::size_t d = points->dim();
  const std::size_t N =
      config.N.value_or(derive_params(n, d, config.c, config.eps, config.overrides()).N);
  const std::size_t half = n / 2;

  struct Trial {
    json record;
    bool success = false;
    bool structural = false;
    bool certified = false;
  };
  std::vector<Trial> out(trials);
  const auto start = Clock::now();
  parallel_for(trials, [&](std::size_t i) {
    Rng rng(attack_stream(config.seed).derive(i));
    ObliviousIndex index(points, ProjectionMatrix::sample_uncapped(N, d, rng), config.c_N,
                         ranking);
    Trial& t = out[i];
    CraftOptions options;
    options.mode = mode;
    options.x_override = config.x;
    options.n = n;
    options.c_N = config.c_N;
    AttackInstance inst;
    try {
      inst = craft_attack_query(index.vectors(), options);
    } catch (const AttackInfeasible& e) {
      t.record = {{"seed_index", i}, {"infeasible", true}, {"message", e.what()}};
      return;
    }
    const ObliviousAnswer ans = query_oblivious(index, inst.q);
    const Neighbor truth = exact_furthest(*points, inst.q);
    const AttackVerification v = verify_attack(*points, inst, index.vectors());
    const bool returned_minus = ans.id < half;
    const bool truth_plus = truth.id >= half;
    t.structural = ans.slot_ids.size() == index.slots() &&
                   std::all_of(ans.slot_ids.begin(), ans.slot_ids.end(),
                               [&](PointId id) { return id < half; });
    t.success = returned_minus && truth_plus && v.ratio >= 10.0;
    t.certified = inst.certificate.certified();
    t.record = {
        {"seed_index", i},
        {"infeasible", false},
        {"x", inst.x},
        {"y", inst.y},
        {"certificate",
         {{"norm_a1_ok", inst.certificate.norm_a1_ok},
          {"x_gt_half_inner", inst.certificate.x_gt_half_inner},
          {"a1_dominates_all", inst.certificate.a1_dominates_all},
          {"x_lt_sqrt_d", inst.certificate.x_lt_sqrt_d},
          {"n_ge_2cN_N", inst.certificate.n_ge_2cN_N},
          {"certified", t.certified}}},
        {"answer_id", ans.id},
        {"truth_id", truth.id},
        {"returned_p_minus", returned_minus},
        {"truth_is_p_plus", truth_plus},
        {"ratio", finite_or_null(v.ratio)},
        {"slots_only_p_minus", t.structural},
        {"success", t.success},
        {"checks",
         {{"norm_a1", v.norm_a1},
          {"far_holds", v.far_holds},
          {"comparison_holds", v.comparison_holds},
          {"identity_holds", v.identity_holds},
          {"inner_pm_v", v.inner_pm_v},
          {"inner_within_d001", v.inner_within_d001},
          {"max_other_proj", v.max_other_proj},
          {"tail_threshold", v.tail_threshold},
          {"tail_holds", v.tail_holds}}}};
  });
  const double total_s = seconds_since(start);

  std::size_t successes = 0;
  std::size_t certified = 0;
  std::size_t infeasible = 0;
  std::size_t structural_failures = 0;
  json records = json::array();
  for (const Trial& t : out) {
    successes += t.success;
    certified += t.certified;
    infeasible += t.record.value("infeasible", false);
    structural_failures += t.success && !t.structural;
    records.push_back(t.record);
  }
  const auto required = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(trials)));

  json report = report_header("attack", config);
  report["dataset"] = dataset_json(*points);
  report["attack"] = {{"N", N},
                      {"c_N", config.c_N},
                      {"slots", config.c_N * N},
                      {"feasible", attack_feasible(n, N, config.c_N)},
                      {"mode", attack_mode_name(mode)},
                      {"ranking", ranking_name(ranking)}};
  report["results"] = {{"trials", trials},
                       {"success_count", successes},
                       {"certified_count", certified},
                       {"infeasible_count", infeasible},
                       {"structural_failures", structural_failures},
                       {"trials_detail", std::move(records)}};
  report["gate"] = {
      {"rule", "success_count >= ceil(0.95 * trials) and structural_failures == 0"},
      {"required_successes", required},
      {"passed", successes >= required && structural_failures == 0}};
  report["timings"] = {{"total_s", total_s}};
  return report;
}

json run_duel(const ExperimentConfig& config, std::ostream* transcript) {
  const std::size_t trials = config.trials_or(1);
  const auto strategy = parse_strategy(config.strategy);
  if (!strategy) {
    throw InputError("unknown strategy '" + config.strategy +
                     "' (expected random, whitebox_attack or probe)");
  }
  if (config.rounds == 0) throw InputError("rounds must be >= 1");
  auto points = make_dataset(config);
  const Params params =
      derive_params(points->size(), points->dim(), config.c, config.eps, config.overrides());
  const std::unique_ptr<DistanceOracle> oracle = make_oracle(config);

  auto start = Clock::now();
  std::optional<RobustIndex> robust;
  std::optional<ObliviousIndex> oblivious;
  std::unique_ptr<QueryTarget> target;
  if (config.target == "robust") {
    robust.emplace(build_robust(points, params, config.seed));
    target = std::make_unique<RobustTarget>(*robust, *oracle);
  } else if (config.target == "oblivious") {
    Rng rng(oblivious_stream(config.seed));
    oblivious.emplace(
        build_oblivious(points, params.N, config.c_N, rng, parse_ranking(config.ranking)));
    target = std::make_unique<ObliviousTarget>(*oblivious, params.c);
  } else {
    throw InputError("unknown target '" + config.target + "' (expected robust or oblivious)");
  }
  const double build_s = seconds_since(start);

  start = Clock::now();
  std::vector<AdversaryTranscript> games(trials);
  parallel_for(trials, [&](std::size_t i) {
    games[i] = adaptive_loop(*target, *strategy, config.rounds, duel_stream(config.seed).derive(i));
  });
  const double game_s = seconds_since(start);

  std::size_t total = 0;
  std::size_t violations = 0;
  double ratio_max = 1.0;
  json violated = json::array();
  for (std::size_t i = 0; i < trials; ++i) {
    if (transcript) write_transcript_jsonl(games[i], *transcript, i);
    for (const Round& r : games[i].rounds) {
      ++total;
      ratio_max = std::max(ratio_max, r.ratio);
      if (!r.violated) continue;
      ++violations;
      violated.push_back({{"trial", i},
                          {"round", r.round},
                          {"query", r.query},
                          {"query_digest", hex64(r.query_digest)},
                          {"answer_id", r.answer_id},
                          {"truth_id", r.truth_id},
                          {"answered_distance", r.answered_distance},
                          {"max_distance", r.max_distance},
                          {"ratio", finite_or_null(r.ratio)},
                          {"sampled_indices", r.sampled_indices}});
      if (r.attacked_matrix) violated.back()["attacked_matrix"] = *r.attacked_matrix;
      if (r.attack_x) violated.back()["attack_x"] = *r.attack_x;
    }
  }
  const std::size_t allowed = (total + 3999) / 4000;

  json report = report_header("duel", config);
  report["dataset"] = dataset_json(*points);
  report["params"] = params_json(params);
  if (robust) {
    report["stats"] = stats_json(robust->stats());
    report["memory_estimate_bytes"] =
        estimate_index_bytes(points->size(), points->dim(), params);
  }
  report["results"] = {{"target", target->name()},
                       {"strategy", strategy_name(*strategy)},
                       {"trials", trials},
                       {"rounds", config.rounds},
                       {"total_rounds", total},
                       {"violation_count", violations},
                       {"ratio_max", finite_or_null(ratio_max)},
                       {"violations", std::move(violated)}};
  report["gate"] = {{"rule", "violation_count <= ceil(total_rounds / 4000)"},
                    {"allowed_violations", allowed},
                    {"passed", violations <= allowed}};
  report["timings"] = {{"build_s", build_s}, {"game_s", game_s}};
  return report;
}

bool gate_passed(const json& report) {
  return report.contains("gate") && report["gate"].value("passed", false);
}

}  // namespace afn
