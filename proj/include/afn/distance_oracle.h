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

#ifndef AFN_DISTANCE_ORACLE_H_
#define AFN_DISTANCE_ORACLE_H_

#include <cstdint>
#include <span>

#include "afn/dataset.h"

namespace afn {

// Distance stage of a query. For every candidate x the estimate must lie in
// [(1 - eps) |q - x|, (1 + eps) |q - x|].
class DistanceOracle {
 public:
  virtual ~DistanceOracle() = default;

  virtual double eps() const = 0;
  virtual double estimate(std::span<const double> q, const Dataset& points,
                          PointId id) const = 0;
};

// eps = 0: exact Euclidean distance, O(d) per candidate.
class ExactOracle final : public DistanceOracle {
 public:
  double eps() const override { return 0.0; }
  double estimate(std::span<const double> q, const Dataset& points,
                  PointId id) const override;
};

ExactOracle exact_oracle();

// Test double for approximate oracles: the exact distance scaled by
// (1 + eps * u) with u in [-1, 1] a deterministic hash of (seed, q, id).
class PerturbedOracle final : public DistanceOracle {
 public:
  PerturbedOracle(double eps, std::uint64_t seed);

  double eps() const override { return eps_; }
  double estimate(std::span<const double> q, const Dataset& points,
                  PointId id) const override;

 private:
  double eps_;
  std::uint64_t seed_;
};

}  // namespace afn

#endif  // AFN_DISTANCE_ORACLE_H_
