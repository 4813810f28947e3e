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

#include "afn/robust_index.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "afn/error.h"
#include "afn/parallel.h"

namespace afn {

RobustIndex::RobustIndex(std::shared_ptr<const Dataset> points, Params params,
                         DatasetStats stats, std::uint64_t master_seed,
                         std::vector<BaseIndex> bases)
    : points_(std::move(points)), params_(params), stats_(std::move(stats)),
      master_seed_(master_seed), bases_(std::move(bases)) {
  if (!points_) throw InputError("robust index needs a dataset");
  if (bases_.size() != params_.k) {
    throw InputError("expected " + std::to_string(params_.k) + " bases, got " +
                     std::to_string(bases_.size()));
  }
  for (const BaseIndex& base : bases_) {
    if (base.dim() != points_->dim()) throw InputError("base dimension mismatch");
    for (PointId id : base.retained()) {
      if (id >= points_->size()) throw InputError("base references unknown point id");
    }
    p_hat_.insert(p_hat_.end(), base.retained().begin(), base.retained().end());
  }
  std::sort(p_hat_.begin(), p_hat_.end());
  p_hat_.erase(std::unique(p_hat_.begin(), p_hat_.end()), p_hat_.end());
}

bool operator==(const RobustIndex& a, const RobustIndex& b) {
  return *a.points_ == *b.points_ && a.params_ == b.params_ && a.stats_ == b.stats_ &&
         a.master_seed_ == b.master_seed_ && a.bases_ == b.bases_ && a.p_hat_ == b.p_hat_;
}

RngStream base_stream(std::uint64_t master_seed, std::size_t base) {
  return RngStream{master_seed, 0}.derive(base);
}

RobustIndex build_robust(std::shared_ptr<const Dataset> points, const Params& params,
                         std::uint64_t master_seed) {
  if (!points) throw InputError("build_robust: null dataset");
  DatasetStats stats = compute_stats(*points, params.c);
  return build_robust(std::move(points), params, master_seed, std::move(stats));
}

RobustIndex build_robust(std::shared_ptr<const Dataset> points, const Params& params,
                         std::uint64_t master_seed, DatasetStats stats) {
  if (!points) throw InputError("build_robust: null dataset");
  params.validate();
  const std::size_t n = points->size();
  const std::size_t d = points->dim();
  if (n < 2) throw InputError("build_robust: need at least two points");
  const double cap = static_cast<double>(n);
  // The cap sits below the typical Gaussian norm sqrt(d) and rejection
  // sampling would not terminate in reasonable time.
  if (cap * cap < static_cast<double>(d)) {
    throw ParamError("build_robust: norm cap n = " + std::to_string(n) +
                     " is below sqrt(d); use more points or fewer dimensions");
  }

  std::vector<std::optional<BaseIndex>> slots(params.k);
  parallel_for(params.k, [&](std::size_t i) {
    Rng rng(base_stream(master_seed, i));
    ProjectionMatrix matrix = ProjectionMatrix::sample(params.N, d, cap, rng);
    slots[i] = build_base(*points, std::move(matrix), {params.candidates(), true});
  });
  std::vector<BaseIndex> bases;
  bases.reserve(params.k);
  for (auto& slot : slots) bases.push_back(std::move(*slot));
  return RobustIndex(std::move(points), params, std::move(stats), master_seed,
                     std::move(bases));
}

std::size_t estimate_index_bytes(std::size_t n, std::size_t d, const Params& params) {
  const std::size_t list_len = std::min(n, params.candidates());
  const std::size_t per_base = params.N * d * sizeof(double) +
                               params.N * list_len * sizeof(ProjectionEntry) +
                               params.N * list_len * sizeof(PointId);
  return params.k * per_base + n * d * sizeof(double) + n * sizeof(PointId);
}

bool trivial_check(const DatasetStats& stats, std::span<const double> q) {
  check_dimension(q, stats.center.size());
  return distance(q, stats.center) >= stats.radius;
}

std::vector<std::size_t> sample_indices(std::size_t k, std::size_t m, Rng& rng) {
  if (k == 0) throw ParamError("sample_indices: k must be >= 1");
  std::vector<std::size_t> out(m);
  for (auto& i : out) i = rng.index(k);
  return out;
}

QueryAnswer query(const RobustIndex& index, std::span<const double> q, RngStream stream,
                  const DistanceOracle& oracle) {
  const Dataset& points = index.dataset();
  check_dimension(q, points.dim());
  check_finite(q);

  QueryAnswer answer;
  answer.oracle_eps = oracle.eps();
  if (index.params().shortcut && trivial_check(index.stats(), q)) {
    // Outside the ball every point is a c-approximate furthest neighbor.
    answer.trivial = true;
    answer.point_id = index.p_hat().front();
    answer.reported_distance = oracle.estimate(q, points, answer.point_id);
    answer.unique_candidates = 1;
    return answer;
  }

  Rng rng(stream);
  answer.sampled_indices = sample_indices(index.params().k, index.params().m, rng);
  std::vector<PointId> candidates;
  for (std::size_t b : answer.sampled_indices) {
    for (const CandidatePair& pair : query_base_pairs(index.bases()[b], q)) {
      candidates.push_back(pair.id);
    }
  }
  answer.candidate_pairs = candidates.size();
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  answer.unique_candidates = candidates.size();

  // Ascending ids with a strict comparison: ties go to the smallest id.
  answer.point_id = candidates.front();
  answer.reported_distance = oracle.estimate(q, points, candidates.front());
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double est = oracle.estimate(q, points, candidates[i]);
    if (est > answer.reported_distance) {
      answer.reported_distance = est;
      answer.point_id = candidates[i];
    }
  }
  return answer;
}

}  // namespace afn
