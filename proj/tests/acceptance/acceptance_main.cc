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

// Acceptance suite. Runs criteria 1 to 11 at their stated sizes and
// tolerances and prints one PASS/FAIL line per criterion. Criterion 10 is
// reported but does not affect the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "afn/attack.h"
#include "afn/base_index.h"
#include "afn/config.h"
#include "afn/dataset_io.h"
#include "afn/distance_oracle.h"
#include "afn/experiments.h"
#include "afn/generate.h"
#include "afn/index_io.h"
#include "afn/params.h"
#include "afn/robust_index.h"
#include "afn/stats.h"
#include "afn/verify.h"
#include "oracles.h"

namespace afn {
namespace {

using nlohmann::json;
using testing::bisect_t;
using testing::brute_force_selection;
using testing::naive_dist;
using testing::random_dataset;
using testing::random_point;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

long double naive_dot_ld(std::span<const double> a, std::span<const double> b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return s;
}

Outcome c1_t_equation() {
  double worst_res = 0.0, worst_oracle = 0.0;
  for (double n : {2.0, 1e3, 1e6}) {
    for (double delta : {0.0, 1.0 / n}) {
      const double t = solve_t(n, delta);
      const long double r = (1.0L - delta) / (1.0L + delta);
      const long double f = std::exp(static_cast<long double>(t) * t * r * r / 2.0L) / t;
      worst_res = std::max(worst_res, static_cast<double>(std::fabs(f - 2.0L * n) / (2.0L * n)));
      const double ref = bisect_t(n, delta);
      worst_oracle = std::max(worst_oracle, std::abs(t - ref) / ref);
    }
  }
  return {worst_res <= 1e-9 && worst_oracle <= 1e-8,
          fmt("max residual %.2e (limit 1e-9), max oracle gap %.2e (limit 1e-8)", worst_res,
              worst_oracle)};
}

Outcome c2_heap_equivalence() {
  std::mt19937_64 gen(2002);
  std::size_t mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + gen() % 200, d = 1 + gen() % 32, N = 1 + gen() % 16;
    const Dataset P = random_dataset(n, d, gen());
    Rng rng(RngStream{2002, static_cast<std::uint64_t>(i)});
    const ProjectionMatrix A = ProjectionMatrix::sample_uncapped(N, d, rng);
    const std::vector<double> q = random_point(d, gen);
    const std::vector<PointId> got = query_base(build_base(P, A), q);
    const std::vector<PointId> want = brute_force_selection(P, A, q, 8 * N + 1);
    if (std::set<PointId>(got.begin(), got.end()) != std::set<PointId>(want.begin(), want.end()) ||
        got.size() != want.size()) {
      ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%zu of 200 instances differ from brute force", mismatches)};
}

Outcome c3_conditional_base() {
  const std::size_t n = 256, d = 32;
  const double c = 2.0;
  const Params p = derive_params(n, d, c, 0.0);
  const double t0 = solve_t(double(n), 0.0);
  std::size_t good = 0, contained = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Dataset P = random_dataset(n, d, 3000 + i);
    Rng rng(RngStream{3003, i});
    const ProjectionMatrix A = ProjectionMatrix::sample(p.N, d, double(n), rng);
    std::mt19937_64 gen(3000 + i);
    const std::vector<double> q = random_point(d, gen);
    if (!is_good(P, q, A, c, 0.0, t0).is_good) continue;
    ++good;
    double fn = 0.0;
    for (std::size_t id = 0; id < n; ++id) fn = std::max(fn, naive_dist(P.point(id), q));
    double best = 0.0;
    for (PointId id : query_base(build_base(P, A), q)) {
      best = std::max(best, naive_dist(P.point(id), q));
    }
    contained += best * c >= fn;
  }
  return {good > 0 && contained == good,
          fmt("%zu of %zu good instances hold a c-furthest candidate (N=%zu, t=%.4f)", contained,
              good, p.N, t0)};
}

Outcome c4_goodness_rate() {
  const std::size_t n = 256, d = 32;
  ParamOverrides o;
  o.const_N = 8.0;
  const Params p = derive_params(n, d, 2.0, 0.0, o);
  const std::size_t trials = 1000;
  std::size_t good = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Dataset P = random_dataset(n, d, 4000 + i);
    Rng rng(RngStream{4004, i});
    const ProjectionMatrix A = ProjectionMatrix::sample(p.N, d, double(n), rng);
    std::mt19937_64 gen(4000 + i);
    const std::vector<double> q = random_point(d, gen);
    good += is_good(P, q, A, 2.0, p.delta, p.t).is_good;
  }
  const double rate = double(good) / trials;
  return {rate >= 0.70, fmt("rate %.3f over %zu trials (limit 0.70; const_N=8, N=%zu, delta=1/256)",
                            rate, trials, p.N)};
}

Outcome c5_trivial_queries() {
  std::size_t failures = 0, total = 0;
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::size_t n = 50 + 40 * s, d = 2 + 7 * s;
    const double c = 1.2 + 0.3 * s;
    const DatasetSpec spec = parse_dataset_spec(s % 2 ? "clustered" : "gaussian");
    const Dataset P = gen_dataset(spec, n, d, RngStream{5005, s});
    const DatasetStats st = compute_stats(P, c);
    std::mt19937_64 gen(5005 + s);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      std::vector<double> dir = random_point(d, gen);
      const double len = naive_dist(dir, std::vector<double>(d, 0.0));
      // A tenth of the queries sit exactly on the sphere.
      const double r = st.radius * (i % 10 == 0 ? 1.0 : 1.0 + 3.0 * u(gen));
      std::vector<double> q(d);
      for (std::size_t j = 0; j < d; ++j) q[j] = st.center[j] + r * dir[j] / len;
      if (!trivial_check(st, q)) {
        // Rounding put q a hair inside; push it back out.
        for (std::size_t j = 0; j < d; ++j) q[j] = st.center[j] + r * (1 + 1e-12) * dir[j] / len;
      }
      ++total;
      double lo = INFINITY, hi = 0.0;
      for (std::size_t id = 0; id < n; ++id) {
        const double dist = naive_dist(P.point(id), q);
        lo = std::min(lo, dist);
        hi = std::max(hi, dist);
      }
      worst = std::max(worst, hi / (c * lo));
      if (!trivial_check(st, q) || lo < (hi / c) * (1 - 1e-9)) ++failures;
    }
  }
  return {failures == 0, fmt("%zu of %zu queries fail; worst max/(c min) = %.4f", failures, total,
                             worst)};
}

Outcome c6_attack() {
  ExperimentConfig cfg;
  cfg.n = 1024;
  cfg.d = 4096;
  cfg.N = 64;
  cfg.c_N = 8;
  cfg.mode = "certified";
  cfg.trials = 100;
  cfg.seed = 3;
  const json r = run_attack(cfg);
  const json& res = r["results"];
  std::size_t successes = 0, structural = 0;
  for (const json& t : res["trials_detail"]) {
    if (!t.value("success", false)) continue;
    ++successes;
    structural += t["slots_only_p_minus"].get<bool>();
  }
  const bool pass = successes >= 95 && structural == successes && gate_passed(r);
  return {pass, fmt("%zu of 100 seeds succeed (need 95), %zu of them with only p- in the slots",
                    successes, structural)};
}

Outcome c7_deterministic_facts() {
  std::mt19937_64 gen(7007);
  std::size_t checked = 0, far = 0, cmp = 0, failures = 0;
  const std::size_t dims[] = {16, 256, 4096};
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = dims[i % 3];
    Rng rng(RngStream{7007, static_cast<std::uint64_t>(i)});
    const ProjectionMatrix A = ProjectionMatrix::sample_uncapped(8, d, rng);
    const double root_d = std::sqrt(double(d));
    CraftOptions opt;
    opt.x_override = std::uniform_real_distribution<double>(0.01, 2.0 * root_d)(gen);
    const AttackInstance inst = craft_attack_query(A, opt);
    const AttackVerification v = verify_attack(build_attack_dataset(2, d), inst, A);
    ++checked;
    bool ok = v.identity_holds;
    const auto a1 = A.vector(0);
    std::vector<double> q_minus_pm(d), q_minus_pp(d), gap(d);
    for (std::size_t j = 0; j < d; ++j) {
      q_minus_pm[j] = inst.q[j] - inst.p_minus[j];
      q_minus_pp[j] = inst.q[j] - inst.p_plus[j];
      gap[j] = inst.p_plus[j] - inst.p_minus[j];
    }
    const long double norm_a1 = std::sqrt(naive_dot_ld(a1, a1));
    // |<q - p-, a_1>| = x |a_1|.
    const long double lhs = std::fabs(naive_dot_ld(q_minus_pm, a1));
    ok = ok && std::fabs(lhs - inst.x * norm_a1) <= 1e-9 * inst.x * norm_a1;
    // x < sqrt(d) implies |q - p+| > sqrt(d).
    if (inst.x < root_d) {
      ++far;
      ok = ok && v.far_holds && naive_dist(inst.q, inst.p_plus) > root_d;
    }
    // x > |<p+ - p-, v>| / 2 implies |<q - p+, a_1>| < |<q - p-, a_1>|.
    if (inst.x > std::fabs(naive_dot_ld(gap, inst.v)) / 2) {
      ++cmp;
      ok = ok && v.comparison_holds && std::fabs(naive_dot_ld(q_minus_pp, a1)) < lhs;
    }
    failures += !ok;
  }
  return {failures == 0 && far > 0 && cmp > 0,
          fmt("%zu failures over %zu instances (%zu far checks, %zu comparison checks)", failures,
              checked, far, cmp)};
}

Outcome c8_robust_duel() {
  ExperimentConfig cfg;
  cfg.n = 1024;
  cfg.d = 64;
  cfg.c = 2.0;
  cfg.eps = 0.0;
  cfg.oracle = "exact";
  cfg.k = 64;
  cfg.m = 20;
  cfg.target = "robust";
  cfg.strategy = "whitebox_attack";
  cfg.rounds = 200;
  cfg.trials = 20;
  std::string detail;
  bool pass = true;
  for (const char* dataset : {"attack", "gaussian"}) {
    cfg.dataset = dataset;
    std::ostringstream transcript;
    const json r = run_duel(cfg, &transcript);
    const json& res = r["results"];
    const std::size_t total = res["total_rounds"], violations = res["violation_count"];
    std::size_t witnessed = 0;
    for (const json& v : res["violations"]) {
      witnessed += v.contains("query") && v["query"].size() == cfg.d &&
                   v.contains("answered_distance") && v.contains("max_distance") &&
                   v.contains("sampled_indices");
    }
    const std::size_t allowed = (total + 3999) / 4000;
    pass = pass && total == 4000 && violations <= allowed && witnessed == violations;
    detail += fmt("%s%s: %zu violations in %zu rounds (limit %zu)", detail.empty() ? "" : "; ",
                  dataset, violations, total, allowed);
  }
  return {pass, detail};
}

Outcome c9_goodness_transfer() {
  std::mt19937_64 gen(9009);
  std::size_t counterexamples = 0, premises = 0, unmet = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 32 + 32 * (i % 4), d = 4 + 4 * (i % 4);
    const Dataset P = random_dataset(n, d, 9000 + i);
    const Params p = derive_params(n, d, 2.0, 0.0);
    Rng rng(RngStream{9009, static_cast<std::uint64_t>(i)});
    const ProjectionMatrix A = ProjectionMatrix::sample(p.N, d, double(n), rng);
    const double diam = compute_stats(P, 2.0).diameter;
    const std::vector<double> q = random_point(d, gen);
    std::vector<double> u = random_point(d, gen);
    const double un = naive_dist(u, std::vector<double>(d, 0.0));
    const double gap = diam / (double(n) * n * n);
    std::vector<double> qp(d);
    for (std::size_t j = 0; j < d; ++j) qp[j] = q[j] + gap * u[j] / un;
    const TransferReport rep = goodness_transfer_check(P, diam, q, qp, A, 2.0, p.delta, p.t);
    unmet += !rep.hypotheses_met();
    premises += rep.q_report.is_good;
    counterexamples += rep.counterexample;
  }
  return {counterexamples == 0 && unmet == 0,
          fmt("%zu counterexamples, %zu instances with unmet hypotheses, %zu good premises",
              counterexamples, unmet, premises)};
}

// Returns PASS unless a 4x step in n grows the mean query time by more than 4x.
Outcome c10_scaling() {
  const std::size_t d = 32;
  std::vector<double> means;
  std::string detail;
  for (std::size_t n : {std::size_t{1} << 12, std::size_t{1} << 14, std::size_t{1} << 16}) {
    auto points = std::make_shared<const Dataset>(
        gen_dataset(parse_dataset_spec("gaussian"), n, d, RngStream{1010, n}));
    Params p = derive_params(n, d, 2.0, 0.0);
    // Query cost does not depend on k; keep only the bases a query can sample.
    ParamOverrides o;
    o.k = p.m;
    p = derive_params(n, d, 2.0, 0.0, o);
    const RobustIndex idx = build_robust(points, p, 1010);
    std::mt19937_64 gen(1010);
    const std::size_t queries = 300;
    std::vector<std::vector<double>> qs;
    for (std::size_t i = 0; i < queries; ++i) qs.push_back(random_point(d, gen));
    const ExactOracle oracle;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < queries; ++i) query(idx, qs[i], RngStream{1010, i}, oracle);
    const double mean =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / queries;
    means.push_back(mean);
    detail += fmt("%sn=%zu N=%zu m=%zu: %.1f us", detail.empty() ? "" : ", ", n, p.N, p.m,
                  mean * 1e6);
  }
  double worst = 0.0;
  for (std::size_t i = 1; i < means.size(); ++i) worst = std::max(worst, means[i] / means[i - 1]);
  detail += fmt("; worst growth per 4x n = %.2fx (expected <= 2x, flagged above 4x)", worst);
  return {worst <= 4.0, detail};
}

std::string afnd_bytes(const Dataset& P) {
  std::ostringstream out;
  write_dataset(P, out);
  return out.str();
}

Outcome c11_persistence() {
  struct Cfg {
    std::size_t n, d;
    double c;
    const char* kind;
  };
  const Cfg cfgs[] = {{300, 7, 2.0, "gaussian"}, {128, 33, 1.5, "clustered"}, {64, 16, 3.0, "attack"}};
  std::size_t ok = 0;
  for (std::uint64_t i = 0; i < 3; ++i) {
    const Cfg& c = cfgs[i];
    const Dataset P = gen_dataset(parse_dataset_spec(c.kind), c.n, c.d, RngStream{1111, i});
    const std::string a = afnd_bytes(P);
    std::istringstream in(a);
    const Dataset back = read_dataset(in);
    auto shared = std::make_shared<const Dataset>(back);
    const RobustIndex idx = build_robust(shared, derive_params(c.n, c.d, c.c, 0.0), 1111 + i);
    std::stringstream buf;
    write_index(idx, buf);
    const std::string b = buf.str();
    const RobustIndex idx_back = read_index(buf, shared);
    std::ostringstream again;
    write_index(idx_back, again);
    ok += back == P && afnd_bytes(back) == a && idx_back == idx && again.str() == b;
  }
  return {ok == 3, fmt("%zu of 3 configurations reload bit-identically", ok)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  bool gating;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace afn

int main() {
  using afn::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "t-equation", 1.0, true, afn::c1_t_equation},
      {2, "heap merge equals brute-force selection", 10.0, true, afn::c2_heap_equivalence},
      {3, "good queries keep a c-furthest candidate", 60.0, true, afn::c3_conditional_base},
      {4, "goodness rate", 300.0, true, afn::c4_goodness_rate},
      {5, "trivial queries", 10.0, true, afn::c5_trivial_queries},
      {6, "attack on the oblivious baseline", 120.0, true, afn::c6_attack},
      {7, "deterministic attack facts", 30.0, true, afn::c7_deterministic_facts},
      {8, "robust index under adaptive attack", 600.0, true, afn::c8_robust_duel},
      {9, "goodness transfer", 120.0, true, afn::c9_goodness_transfer},
      {10, "query time scaling (non-gating)", 0.0, false, afn::c10_scaling},
      {11, "persistence round trip", 30.0, true, afn::c11_persistence},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    afn::Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s <= 0.0 || secs < c.limit_s;
    const bool pass = out.pass && in_time;
    if (!pass && c.gating) ++failed;
    std::string timing = afn::fmt("%.2f s", secs);
    if (c.limit_s > 0.0) timing += afn::fmt(", limit %.0f s", c.limit_s);
    std::printf("criterion %2d %s  %s: %s (%s)\n", c.id, pass ? "PASS" : "FAIL", c.name,
                out.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d gating criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
