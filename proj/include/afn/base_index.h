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

// The oblivious base structure: one Gaussian projection matrix and, per
// projection vector, the points sorted by their projection with only the
// largest entries retained. A query merges the lists with a max-heap keyed by
// a.p - a.q and keeps the first `candidates` pairs.

#ifndef AFN_BASE_INDEX_H_
#define AFN_BASE_INDEX_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "afn/dataset.h"
#include "afn/rng.h"
#include "afn/vector_ops.h"

namespace afn {

// N projection vectors of dimension d, stored row-major (vector j is row j).
class ProjectionMatrix {
 public:
  ProjectionMatrix(std::size_t dim, std::vector<double> rows);

  // N norm-capped Gaussian vectors (see gaussian_vector).
  static ProjectionMatrix sample(std::size_t count, std::size_t dim, double norm_cap,
                                 Rng& rng);
  // N uncapped standard normal vectors.
  static ProjectionMatrix sample_uncapped(std::size_t count, std::size_t dim, Rng& rng);
  static ProjectionMatrix from_vectors(const std::vector<Point>& vectors);

  std::size_t count() const { return rows_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> vector(std::size_t j) const {
    return {rows_.data() + j * dim_, dim_};
  }
  std::span<const double> data() const { return rows_; }
  double max_norm() const;

  friend bool operator==(const ProjectionMatrix&, const ProjectionMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<double> rows_;
};

struct ProjectionEntry {
  double value = 0.0;  // a_j . p, exactly as computed by dot()
  PointId id = 0;

  friend bool operator==(const ProjectionEntry&, const ProjectionEntry&) = default;
};

// Sorted by value descending, then id ascending.
using ProjectionList = std::vector<ProjectionEntry>;

// One (point, projection) pair chosen by the heap merge.
struct CandidatePair {
  double key = 0.0;    // a_j . p - a_j . q
  double value = 0.0;  // a_j . p
  PointId id = 0;
  std::uint32_t projection = 0;

  friend bool operator==(const CandidatePair&, const CandidatePair&) = default;
};

// Global pair order: key descending, then value descending, then point id
// ascending, then projection index ascending. The value term only matters
// when two keys round to the same double; it keeps the heap merge and a full
// sort in exact agreement.
bool pair_precedes(const CandidatePair& a, const CandidatePair& b);

struct BaseBuildOptions {
  // Pairs selected per query; 0 means 8N + 1.
  std::size_t candidate_budget = 0;
  // Keep min(n, budget) entries per list. Disable only to check that
  // truncation never changes an answer.
  bool truncate = true;
};

class BaseIndex {
 public:
  BaseIndex(ProjectionMatrix matrix, std::vector<ProjectionList> lists,
            std::size_t candidate_budget);

  const ProjectionMatrix& matrix() const { return matrix_; }
  const std::vector<ProjectionList>& lists() const { return lists_; }
  // Sorted ids of every point appearing in some list.
  const std::vector<PointId>& retained() const { return retained_; }
  std::size_t candidate_budget() const { return candidate_budget_; }
  std::size_t dim() const { return matrix_.dim(); }

  friend bool operator==(const BaseIndex&, const BaseIndex&) = default;

 private:
  ProjectionMatrix matrix_;
  std::vector<ProjectionList> lists_;
  std::vector<PointId> retained_;
  std::size_t candidate_budget_;
};

BaseIndex build_base(const Dataset& points, ProjectionMatrix matrix,
                     const BaseBuildOptions& options = {});

// The first candidate_budget pairs in global pair order, produced by a heap
// merge over the lists. O(N d + budget log N).
std::vector<CandidatePair> query_base_pairs(const BaseIndex& index,
                                            std::span<const double> q);

// Point ids of query_base_pairs in selection order, duplicates removed.
std::vector<PointId> query_base(const BaseIndex& index, std::span<const double> q);

struct GoodWitness {
  std::uint32_t projection = 0;
  double value = 0.0;  // a . p* - a . q
};

struct GoodnessReport {
  bool is_good = false;
  std::optional<GoodWitness> good_witness;
  std::size_t outlier_count = 0;
  PointId p_star = 0;
  double p_star_dist = 0.0;
};

// Goodness of q for a matrix A: a good projection for (q, p*) exists and at
// most 8N outlier pairs exceed the relaxed threshold. Precomputes A.P once so
// that many queries against the same matrix cost O(n (d + N)) each.
class GoodnessEvaluator {
 public:
  GoodnessEvaluator(const Dataset& points, const ProjectionMatrix& matrix);

  GoodnessReport evaluate(std::span<const double> q, double c, double delta,
                          double t) const;

 private:
  const Dataset& points_;
  const ProjectionMatrix& matrix_;
  std::vector<double> projections_;  // [j * n + id] = a_j . p_id
};

// Test and diagnostic oracle, O(n N d). A query at distance 0 from every
// point is reported good with a zero-valued witness on projection 0.
GoodnessReport is_good(const Dataset& points, std::span<const double> q,
                       const ProjectionMatrix& matrix, double c, double delta, double t);

}  // namespace afn

#endif  // AFN_BASE_INDEX_H_
