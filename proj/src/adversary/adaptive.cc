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

#include "afn/adaptive.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "afn/attack.h"
#include "afn/error.h"
#include "afn/exact.h"
#include "afn/stats.h"

namespace afn {

namespace {

PointId exact_argmax(const Dataset& points, std::span<const double> q,
                     std::vector<PointId> candidates) {
  std::sort(candidates.begin(), candidates.end());
  PointId best = candidates.front();
  double best_d2 = squared_distance(q, points.point(best));
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double d2 = squared_distance(q, points.point(candidates[i]));
    if (d2 > best_d2) {
      best_d2 = d2;
      best = candidates[i];
    }
  }
  return best;
}

}  // namespace

TargetAnswer RobustTarget::answer(std::span<const double> q, RngStream fresh) const {
  QueryAnswer a = query(index_, q, fresh, oracle_);
  return {a.point_id, a.reported_distance, std::move(a.sampled_indices)};
}

PointId RobustTarget::simulate_matrix(std::size_t i, std::span<const double> q) const {
  return exact_argmax(index_.dataset(), q, query_base(index_.bases().at(i), q));
}

ObliviousTarget::ObliviousTarget(const ObliviousIndex& index, double c) : index_(index), c_(c) {
  if (!(c > 1.0)) throw ParamError("c must be > 1");
  const Dataset& points = index.dataset();
  const std::size_t d = points.dim();
  Point lo(points.point(0).begin(), points.point(0).end());
  Point hi = lo;
  for (std::size_t id = 1; id < points.size(); ++id) {
    const auto p = points.point(id);
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  }
  double bw = 0.0;
  center_.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    bw = std::max(bw, hi[j] - lo[j]);
    center_[j] = 0.5 * (lo[j] + hi[j]);
  }
  radius_ = trivial_radius(bw, d, c);
}

TargetAnswer ObliviousTarget::answer(std::span<const double> q, RngStream) const {
  const ObliviousAnswer a = query_oblivious(index_, q);
  return {a.id, a.distance, {}};
}

PointId ObliviousTarget::simulate_matrix(std::size_t, std::span<const double> q) const {
  return query_oblivious(index_, q).id;
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kRandom:
      return "random";
    case Strategy::kWhiteboxAttack:
      return "whitebox_attack";
    case Strategy::kProbe:
      return "probe";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::kRandom, Strategy::kWhiteboxAttack, Strategy::kProbe}) {
    if (name == strategy_name(s)) return s;
  }
  return std::nullopt;
}

std::size_t AdversaryTranscript::violations() const {
  return static_cast<std::size_t>(
      std::count_if(rounds.begin(), rounds.end(), [](const Round& r) { return r.violated; }));
}

Round score_round(const Dataset& points, std::span<const double> q, PointId answer_id, double c,
                  double eps) {
  Round r;
  r.query.assign(q.begin(), q.end());
  r.query_digest = digest(q);
  r.answer_id = answer_id;
  const Neighbor truth = exact_furthest(points, q);
  r.truth_id = truth.id;
  r.max_distance = truth.distance;
  r.answered_distance = distance(q, points.point(answer_id));
  if (r.answered_distance > 0.0) {
    r.ratio = r.max_distance / r.answered_distance;
  } else {
    r.ratio = r.max_distance > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  r.violated = r.ratio > c * (1.0 + eps);
  return r;
}

namespace {

Point random_in_ball(std::span<const double> center, double radius, Rng& rng) {
  const std::size_t d = center.size();
  Point dir(d);
  double len = 0.0;
  while (!(len > 0.0)) {
    for (auto& x : dir) x = rng.normal();
    len = norm(dir);
  }
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  Point q(center.begin(), center.end());
  for (std::size_t j = 0; j < d; ++j) q[j] += r * dir[j] / len;
  return q;
}

// Pulls q back inside the open ball so the trivial shortcut never fires.
void clamp_to_ball(Point& q, std::span<const double> center, double radius) {
  const double r = distance(q, center);
  const double limit = 0.999 * radius;
  if (r <= limit || r == 0.0) return;
  for (std::size_t j = 0; j < q.size(); ++j) q[j] = center[j] + (q[j] - center[j]) * limit / r;
}

struct Crafted {
  Point q;
  std::optional<std::size_t> matrix;
  std::optional<double> x;
};

// The construction against an absolute-value ranking: anchor on the last
// answer and push the query along a_1 until it owns every slot.
Crafted craft_against_absolute(const QueryTarget& target, PointId anchor) {
  const Dataset& points = target.dataset();
  const auto near = points.point(anchor);
  const Neighbor far = exact_furthest(points, near);
  Crafted out;
  out.matrix = 0;
  if (!(far.distance > 0.0)) {
    out.q.assign(near.begin(), near.end());
    return out;
  }
  CraftOptions options;
  options.p_minus = Point(near.begin(), near.end());
  options.p_plus = Point(points.point(far.id).begin(), points.point(far.id).end());
  AttackInstance inst;
  try {
    inst = craft_attack_query(target.matrix(0), options);
  } catch (const AttackInfeasible&) {
    options.mode = AttackMode::kPaper;
    inst = craft_attack_query(target.matrix(0), options);
  }
  out.q = std::move(inst.q);
  out.x = inst.x;
  return out;
}

// Against a signed ranking a query at anchor - x a/|a| lifts every key of
// column a by x|a|, so that list dominates the merge. Columns are tried in
// order of how far the anchor already projects above the center, over a
// geometric x grid, and each choice is scored by simulating the single base.
Crafted craft_against_signed(const QueryTarget& target, std::size_t matrix, PointId anchor) {
  const Dataset& points = target.dataset();
  const ProjectionMatrix& A = target.matrix(matrix);
  const Point center = target.center();
  const double radius = target.radius();
  const double limit = target.c() * (1.0 + target.eps());
  const auto p = points.point(anchor);

  std::vector<std::pair<double, std::size_t>> columns;
  for (std::size_t j = 0; j < A.count(); ++j) {
    double lift = 0.0;
    const auto a = A.vector(j);
    for (std::size_t i = 0; i < a.size(); ++i) lift += a[i] * (p[i] - center[i]);
    columns.emplace_back(-lift, j);
  }
  std::sort(columns.begin(), columns.end());
  const std::size_t tried = std::min<std::size_t>(3, columns.size());

  Crafted best;
  best.matrix = matrix;
  best.q.assign(p.begin(), p.end());
  double best_ratio = -1.0;
  constexpr int kSteps = 16;
  for (std::size_t c = 0; c < tried; ++c) {
    const auto a = A.vector(columns[c].second);
    const double len = norm(a);
    if (!(len > 0.0)) continue;
    for (int s = 0; s < kSteps; ++s) {
      const double x = radius * std::pow(2.0, -8.0 + 9.0 * s / (kSteps - 1));
      Point q(p.begin(), p.end());
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= x * a[i] / len;
      clamp_to_ball(q, center, radius);
      const PointId sim = target.simulate_matrix(matrix, q);
      const double got = distance(q, points.point(sim));
      const double want = exact_furthest(points, q).distance;
      const double ratio = got > 0.0 ? want / got : (want > 0.0 ? 1e300 : 1.0);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best.q = std::move(q);
        best.x = x;
      }
      if (best_ratio > limit) return best;
    }
  }
  return best;
}

}  // namespace

AdversaryTranscript adaptive_loop(const QueryTarget& target, Strategy strategy, std::size_t T,
                                  RngStream stream) {
  if (T == 0) throw ParamError("adaptive_loop: T must be >= 1");
  const Dataset& points = target.dataset();
  const Point center = target.center();
  const double radius = target.radius();
  Rng adversary(stream.derive(0));
  const RngStream fresh = stream.derive(1);

  AdversaryTranscript transcript;
  transcript.target = target.name();
  transcript.strategy = strategy;
  transcript.c = target.c();
  transcript.eps = target.eps();
  transcript.rounds.reserve(T);

  Point probe_state;
  double probe_ratio = 0.0;
  for (std::size_t r = 0; r < T; ++r) {
    Crafted crafted;
    const Round* prev = r > 0 ? &transcript.rounds.back() : nullptr;
    switch (strategy) {
      case Strategy::kRandom:
        crafted.q = random_in_ball(center, radius, adversary);
        break;
      case Strategy::kWhiteboxAttack: {
        const PointId anchor = prev ? prev->answer_id : 0;
        if (target.ranking() == Ranking::kAbsolute) {
          crafted = craft_against_absolute(target, anchor);
        } else {
          std::size_t matrix = r % target.matrix_count();
          if (prev && !prev->sampled_indices.empty()) {
            matrix = prev->sampled_indices[r % prev->sampled_indices.size()];
          }
          crafted = craft_against_signed(target, matrix, anchor);
        }
        break;
      }
      case Strategy::kProbe:
        if (!prev) {
          crafted.q = random_in_ball(center, radius, adversary);
        } else {
          if (prev->ratio >= probe_ratio) {
            probe_state = prev->query;
            probe_ratio = prev->ratio;
          }
          crafted.q = probe_state;
          Point dir(crafted.q.size());
          for (auto& x : dir) x = adversary.normal();
          const double len = norm(dir);
          const double step = 0.05 * radius;
          if (len > 0.0) {
            for (std::size_t j = 0; j < dir.size(); ++j) crafted.q[j] += step * dir[j] / len;
          }
          clamp_to_ball(crafted.q, center, radius);
        }
        break;
    }

    TargetAnswer ans = target.answer(crafted.q, fresh.derive(r));
    Round round = score_round(points, crafted.q, ans.id, target.c(), target.eps());
    round.round = r;
    round.sampled_indices = std::move(ans.sampled_indices);
    round.attacked_matrix = crafted.matrix;
    round.attack_x = crafted.x;
    transcript.rounds.push_back(std::move(round));
  }
  return transcript;
}

void write_transcript_jsonl(const AdversaryTranscript& transcript, std::ostream& out,
                            std::optional<std::size_t> trial) {
  for (const Round& r : transcript.rounds) {
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(r.query_digest));
    nlohmann::json line = {{"round", r.round},   {"query_digest", hex},
                           {"answer_id", r.answer_id}, {"truth_id", r.truth_id},
                           {"ratio", nullptr},   {"violated", r.violated}};
    if (std::isfinite(r.ratio)) line["ratio"] = r.ratio;
    if (trial) line["trial"] = *trial;
    if (r.violated) {
      nlohmann::json witness = {{"query", r.query},
                                {"answered_distance", r.answered_distance},
                                {"max_distance", r.max_distance},
                                {"sampled_indices", r.sampled_indices}};
      if (r.attacked_matrix) witness["attacked_matrix"] = *r.attacked_matrix;
      if (r.attack_x) witness["attack_x"] = *r.attack_x;
      line["witness"] = std::move(witness);
    }
    out << line.dump() << '\n';
  }
}

}  // namespace afn
