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

#include "afn/base_index.h"

#include <algorithm>
#include <queue>
#include <string>
#include <unordered_set>

#include "afn/error.h"
#include "afn/exact.h"
#include "afn/gaussian.h"

namespace afn {
namespace {

bool entry_precedes(const ProjectionEntry& a, const ProjectionEntry& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.id < b.id;
}

struct HeapItem {
  CandidatePair pair;
  std::size_t cursor = 0;
};

struct HeapOrder {
  // std::priority_queue pops the element that is "largest" under this order,
  // i.e. the one that precedes every other in the global pair order.
  bool operator()(const HeapItem& a, const HeapItem& b) const {
    return pair_precedes(b.pair, a.pair);
  }
};

}  // namespace

bool pair_precedes(const CandidatePair& a, const CandidatePair& b) {
  if (a.key != b.key) return a.key > b.key;
  if (a.value != b.value) return a.value > b.value;
  if (a.id != b.id) return a.id < b.id;
  return a.projection < b.projection;
}

ProjectionMatrix::ProjectionMatrix(std::size_t dim, std::vector<double> rows)
    : dim_(dim), rows_(std::move(rows)) {
  if (dim_ == 0) throw ParamError("projection dimension must be at least 1");
  if (rows_.empty() || rows_.size() % dim_ != 0) {
    throw ParamError("projection matrix must hold a positive multiple of d values");
  }
}

ProjectionMatrix ProjectionMatrix::sample(std::size_t count, std::size_t dim,
                                          double norm_cap, Rng& rng) {
  if (count == 0) throw ParamError("N must be >= 1");
  std::vector<double> rows;
  rows.reserve(count * dim);
  for (std::size_t j = 0; j < count; ++j) {
    const Point a = gaussian_vector(dim, norm_cap, rng);
    rows.insert(rows.end(), a.begin(), a.end());
  }
  return ProjectionMatrix(dim, std::move(rows));
}

ProjectionMatrix ProjectionMatrix::sample_uncapped(std::size_t count, std::size_t dim,
                                                   Rng& rng) {
  if (count == 0) throw ParamError("N must be >= 1");
  std::vector<double> rows;
  rows.reserve(count * dim);
  for (std::size_t j = 0; j < count; ++j) {
    const Point a = standard_normal_vector(dim, rng);
    rows.insert(rows.end(), a.begin(), a.end());
  }
  return ProjectionMatrix(dim, std::move(rows));
}

ProjectionMatrix ProjectionMatrix::from_vectors(const std::vector<Point>& vectors) {
  if (vectors.empty()) throw ParamError("N must be >= 1");
  const std::size_t dim = vectors.front().size();
  std::vector<double> rows;
  for (const Point& a : vectors) {
    if (a.size() != dim) throw ParamError("projection vectors differ in dimension");
    rows.insert(rows.end(), a.begin(), a.end());
  }
  return ProjectionMatrix(dim, std::move(rows));
}

double ProjectionMatrix::max_norm() const {
  double best = 0.0;
  for (std::size_t j = 0; j < count(); ++j) best = std::max(best, norm(vector(j)));
  return best;
}

BaseIndex::BaseIndex(ProjectionMatrix matrix, std::vector<ProjectionList> lists,
                     std::size_t candidate_budget)
    : matrix_(std::move(matrix)), lists_(std::move(lists)),
      candidate_budget_(candidate_budget) {
  if (lists_.size() != matrix_.count()) {
    throw InputError("base index needs exactly one list per projection vector");
  }
  if (candidate_budget_ == 0) throw ParamError("candidate budget must be >= 1");
  for (const ProjectionList& list : lists_) {
    if (list.empty()) throw InputError("projection lists must be non-empty");
    for (const ProjectionEntry& e : list) retained_.push_back(e.id);
  }
  std::sort(retained_.begin(), retained_.end());
  retained_.erase(std::unique(retained_.begin(), retained_.end()), retained_.end());
}

BaseIndex build_base(const Dataset& points, ProjectionMatrix matrix,
                     const BaseBuildOptions& options) {
  if (matrix.dim() != points.dim()) {
    throw InputError("projection dimension " + std::to_string(matrix.dim()) +
                     " does not match dataset dimension " + std::to_string(points.dim()));
  }
  const std::size_t n = points.size();
  const std::size_t budget =
      options.candidate_budget != 0 ? options.candidate_budget : 8 * matrix.count() + 1;
  const std::size_t keep = options.truncate ? std::min(n, budget) : n;

  std::vector<ProjectionList> lists(matrix.count());
  for (std::size_t j = 0; j < matrix.count(); ++j) {
    const auto a = matrix.vector(j);
    ProjectionList all(n);
    for (std::size_t i = 0; i < n; ++i) {
      all[i] = {dot(a, points.point(i)), static_cast<PointId>(i)};
    }
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                      entry_precedes);
    all.resize(keep);
    all.shrink_to_fit();
    lists[j] = std::move(all);
  }
  return BaseIndex(std::move(matrix), std::move(lists), budget);
}

std::vector<CandidatePair> query_base_pairs(const BaseIndex& index,
                                            std::span<const double> q) {
  check_dimension(q, index.dim());
  const ProjectionMatrix& matrix = index.matrix();
  const auto& lists = index.lists();

  // Subtracting the per-list constant a_j.q keeps every list in key order, so
  // each list only has to expose its current head to the heap.
  std::vector<double> offsets(matrix.count());
  std::vector<HeapItem> seed;
  seed.reserve(matrix.count());
  for (std::size_t j = 0; j < matrix.count(); ++j) {
    offsets[j] = dot(matrix.vector(j), q);
    const ProjectionEntry& head = lists[j].front();
    seed.push_back({{head.value - offsets[j], head.value, head.id,
                     static_cast<std::uint32_t>(j)},
                    0});
  }
  std::priority_queue<HeapItem, std::vector<HeapItem>, HeapOrder> heap(HeapOrder{},
                                                                       std::move(seed));

  std::vector<CandidatePair> out;
  out.reserve(index.candidate_budget());
  while (out.size() < index.candidate_budget() && !heap.empty()) {
    HeapItem top = heap.top();
    heap.pop();
    out.push_back(top.pair);
    const std::size_t j = top.pair.projection;
    const std::size_t next = top.cursor + 1;
    if (next < lists[j].size()) {
      const ProjectionEntry& e = lists[j][next];
      heap.push({{e.value - offsets[j], e.value, e.id, top.pair.projection}, next});
    }
  }
  return out;
}

std::vector<PointId> query_base(const BaseIndex& index, std::span<const double> q) {
  const std::vector<CandidatePair> pairs = query_base_pairs(index, q);
  std::vector<PointId> ids;
  ids.reserve(pairs.size());
  std::unordered_set<PointId> seen;
  seen.reserve(pairs.size());
  for (const CandidatePair& p : pairs) {
    if (seen.insert(p.id).second) ids.push_back(p.id);
  }
  return ids;
}

GoodnessEvaluator::GoodnessEvaluator(const Dataset& points, const ProjectionMatrix& matrix)
    : points_(points), matrix_(matrix) {
  if (matrix.dim() != points.dim()) throw InputError("projection dimension mismatch");
  const std::size_t n = points.size();
  projections_.resize(matrix.count() * n);
  for (std::size_t j = 0; j < matrix.count(); ++j) {
    const auto a = matrix.vector(j);
    for (std::size_t i = 0; i < n; ++i) projections_[j * n + i] = dot(a, points.point(i));
  }
}

GoodnessReport GoodnessEvaluator::evaluate(std::span<const double> q, double c,
                                           double delta, double t) const {
  if (!(c > 1.0)) throw ParamError("is_good: c must be > 1");
  if (!(delta >= 0.0 && delta < 1.0)) throw ParamError("is_good: delta must be in [0, 1)");
  if (!(t >= 1.0)) throw ParamError("is_good: t must be >= 1");

  const Neighbor far = exact_furthest(points_, q);
  GoodnessReport report;
  report.p_star = far.id;
  report.p_star_dist = far.distance;
  if (far.distance == 0.0) {
    report.is_good = true;
    report.good_witness = GoodWitness{0, 0.0};
    return report;
  }

  const std::size_t n = points_.size();
  const std::size_t count = matrix_.count();
  std::vector<double> offsets(count);
  for (std::size_t j = 0; j < count; ++j) offsets[j] = dot(matrix_.vector(j), q);

  const double dist = far.distance;
  const double good_threshold = t * dist * (1.0 + delta) / c;
  for (std::size_t j = 0; j < count; ++j) {
    const double key = projections_[j * n + far.id] - offsets[j];
    if (key >= good_threshold) {
      report.good_witness = GoodWitness{static_cast<std::uint32_t>(j), key};
      break;
    }
  }

  const double outlier_threshold = t * dist * (1.0 - delta) / c;
  const double near_limit = dist * (1.0 + delta);
  for (std::size_t i = 0; i < n; ++i) {
    const double d_i = distance(points_.point(i), q);
    if (!(d_i * c < near_limit)) continue;
    for (std::size_t j = 0; j < count; ++j) {
      if (projections_[j * n + i] - offsets[j] >= outlier_threshold) ++report.outlier_count;
    }
  }
  report.is_good = report.good_witness.has_value() && report.outlier_count <= 8 * count;
  return report;
}

GoodnessReport is_good(const Dataset& points, std::span<const double> q,
                       const ProjectionMatrix& matrix, double c, double delta, double t) {
  check_dimension(q, points.dim());
  return GoodnessEvaluator(points, matrix).evaluate(q, c, delta, t);
}

}  // namespace afn
