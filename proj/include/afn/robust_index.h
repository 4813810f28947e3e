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

// Robust furthest-neighbor index: k independent base structures built once,
// and per query a fresh uniform sample (with repetition) of m of them whose
// candidates go through the distance oracle.
//
// Queries never touch index state; the only randomness a query consumes is
// the stream the caller passes in, which must not be reused across queries.

#ifndef AFN_ROBUST_INDEX_H_
#define AFN_ROBUST_INDEX_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "afn/base_index.h"
#include "afn/dataset.h"
#include "afn/distance_oracle.h"
#include "afn/params.h"
#include "afn/rng.h"
#include "afn/stats.h"

namespace afn {

class RobustIndex {
 public:
  RobustIndex(std::shared_ptr<const Dataset> points, Params params, DatasetStats stats,
              std::uint64_t master_seed, std::vector<BaseIndex> bases);

  const Dataset& dataset() const { return *points_; }
  std::shared_ptr<const Dataset> dataset_ptr() const { return points_; }
  const Params& params() const { return params_; }
  const DatasetStats& stats() const { return stats_; }
  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<BaseIndex>& bases() const { return bases_; }
  // Sorted union of every base's retained ids.
  const std::vector<PointId>& p_hat() const { return p_hat_; }

  // Structural equality; the dataset is compared by content.
  friend bool operator==(const RobustIndex& a, const RobustIndex& b);

 private:
  std::shared_ptr<const Dataset> points_;
  Params params_;
  DatasetStats stats_;
  std::uint64_t master_seed_;
  std::vector<BaseIndex> bases_;
  std::vector<PointId> p_hat_;
};

// Stream used for base i of an index built with master_seed.
RngStream base_stream(std::uint64_t master_seed, std::size_t base);

// Builds k bases in parallel, each from its own stream; the result depends
// only on (points, params, master_seed). Vectors are capped at norm n.
RobustIndex build_robust(std::shared_ptr<const Dataset> points, const Params& params,
                         std::uint64_t master_seed);

// Same, reusing already computed statistics for the dataset.
RobustIndex build_robust(std::shared_ptr<const Dataset> points, const Params& params,
                         std::uint64_t master_seed, DatasetStats stats);

// Rough resident size of an index with these parameters.
std::size_t estimate_index_bytes(std::size_t n, std::size_t d, const Params& params);

struct QueryAnswer {
  PointId point_id = 0;
  double reported_distance = 0.0;
  bool trivial = false;
  std::vector<std::size_t> sampled_indices;  // empty for trivial answers
  double oracle_eps = 0.0;
  std::size_t candidate_pairs = 0;   // before deduplication
  std::size_t unique_candidates = 0;
};

// true iff |q - ct| >= R.
bool trivial_check(const DatasetStats& stats, std::span<const double> q);

// m indices drawn uniformly from [0, k) with repetition.
std::vector<std::size_t> sample_indices(std::size_t k, std::size_t m, Rng& rng);

QueryAnswer query(const RobustIndex& index, std::span<const double> q, RngStream stream,
                  const DistanceOracle& oracle);

}  // namespace afn

#endif  // AFN_ROBUST_INDEX_H_
