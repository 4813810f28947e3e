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

#include "afn/exact.h"

#include <cmath>

namespace afn {

Neighbor exact_furthest(const Dataset& points, std::span<const double> q) {
  check_dimension(q, points.dim());
  PointId best = 0;
  double best_sq = squared_distance(points.point(0), q);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double sq = squared_distance(points.point(i), q);
    if (sq > best_sq) {
      best_sq = sq;
      best = static_cast<PointId>(i);
    }
  }
  return {best, std::sqrt(best_sq)};
}

Neighbor exact_nearest(const Dataset& points, std::span<const double> q) {
  check_dimension(q, points.dim());
  PointId best = 0;
  double best_sq = squared_distance(points.point(0), q);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double sq = squared_distance(points.point(i), q);
    if (sq < best_sq) {
      best_sq = sq;
      best = static_cast<PointId>(i);
    }
  }
  return {best, std::sqrt(best_sq)};
}

}  // namespace afn
