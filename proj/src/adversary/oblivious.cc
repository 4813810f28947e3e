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

#include "afn/oblivious.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "afn/error.h"
#include "afn/vector_ops.h"

namespace afn {

const char* ranking_name(Ranking r) {
  return r == Ranking::kAbsolute ? "absolute" : "signed";
}

ObliviousIndex::ObliviousIndex(std::shared_ptr<const Dataset> points, ProjectionMatrix vectors,
                               std::size_t c_N, Ranking ranking)
    : points_(std::move(points)), vectors_(std::move(vectors)), c_N_(c_N), ranking_(ranking) {
  if (!points_) throw InputError("oblivious index needs a dataset");
  if (vectors_.count() == 0) throw ParamError("oblivious index needs N >= 1");
  if (c_N_ == 0) throw ParamError("c_N must be >= 1");
  if (vectors_.dim() != points_->dim()) {
    throw InputError("projection dimension " + std::to_string(vectors_.dim()) +
                     " does not match dataset dimension " + std::to_string(points_->dim()));
  }
}

ObliviousIndex build_oblivious(std::shared_ptr<const Dataset> points, std::size_t N,
                               std::size_t c_N, Rng& rng, Ranking ranking) {
  if (!points) throw InputError("build_oblivious: null dataset");
  if (N == 0) throw ParamError("build_oblivious: N must be >= 1");
  ProjectionMatrix vectors = ProjectionMatrix::sample_uncapped(N, points->dim(), rng);
  return ObliviousIndex(std::move(points), std::move(vectors), c_N, ranking);
}

namespace {

struct ScoredPair {
  double score;
  PointId id;
  std::uint32_t projection;
};

bool scored_precedes(const ScoredPair& a, const ScoredPair& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.id != b.id) return a.id < b.id;
  return a.projection < b.projection;
}

}  // namespace

ObliviousAnswer query_oblivious(const ObliviousIndex& index, std::span<const double> q) {
  const Dataset& points = index.dataset();
  const ProjectionMatrix& A = index.vectors();
  check_dimension(q, points.dim());
  check_finite(q);

  const std::size_t n = points.size();
  const std::size_t d = points.dim();
  const std::size_t N = A.count();
  std::vector<ScoredPair> pairs;
  pairs.reserve(n * N);
  Point diff(d);
  std::vector<double> aq(N);
  for (std::size_t i = 0; i < N; ++i) aq[i] = dot(A.vector(i), q);
  for (std::size_t id = 0; id < n; ++id) {
    const auto p = points.point(id);
    if (index.ranking() == Ranking::kAbsolute) {
      for (std::size_t j = 0; j < d; ++j) diff[j] = q[j] - p[j];
    }
    for (std::size_t i = 0; i < N; ++i) {
      const double score = index.ranking() == Ranking::kAbsolute
                               ? std::abs(dot(A.vector(i), diff))
                               : dot(A.vector(i), p) - aq[i];
      pairs.push_back({score, static_cast<PointId>(id), static_cast<std::uint32_t>(i)});
    }
  }

  const std::size_t keep = std::min(index.slots(), pairs.size());
  std::nth_element(pairs.begin(), pairs.begin() + (keep - 1), pairs.end(), scored_precedes);
  std::sort(pairs.begin(), pairs.begin() + keep, scored_precedes);

  ObliviousAnswer answer;
  answer.slot_ids.reserve(keep);
  for (std::size_t s = 0; s < keep; ++s) answer.slot_ids.push_back(pairs[s].id);
  answer.candidates = answer.slot_ids;
  std::sort(answer.candidates.begin(), answer.candidates.end());
  answer.candidates.erase(std::unique(answer.candidates.begin(), answer.candidates.end()),
                          answer.candidates.end());

  answer.id = answer.candidates.front();
  double best = squared_distance(q, points.point(answer.id));
  for (std::size_t s = 1; s < answer.candidates.size(); ++s) {
    const double d2 = squared_distance(q, points.point(answer.candidates[s]));
    if (d2 > best) {
      best = d2;
      answer.id = answer.candidates[s];
    }
  }
  answer.distance = std::sqrt(best);
  return answer;
}

}  // namespace afn
