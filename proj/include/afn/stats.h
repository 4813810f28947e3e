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

#ifndef AFN_STATS_H_
#define AFN_STATS_H_

#include <cstddef>
#include <span>

#include "afn/dataset.h"
#include "afn/vector_ops.h"

namespace afn {

struct DatasetStats {
  double box_width = 0.0;  // max over coordinates of (max - min)
  Point center;            // per-coordinate midpoint of the bounding box
  double diameter = 0.0;   // max pairwise distance
  double radius = 0.0;     // trivial-query radius (1+c) sqrt(d) bw / (2(c-1))

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

// Exact statistics. The diameter is an O(n^2 d) scan, parallelised across
// AFN_THREADS workers with a deterministic reduction.
DatasetStats compute_stats(const Dataset& points, double c);

double trivial_radius(double box_width, std::size_t dim, double c);

}  // namespace afn

#endif  // AFN_STATS_H_
