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

#include "afn/stats.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "afn/error.h"
#include "afn/parallel.h"

namespace afn {
namespace {

// Largest squared distance from point i to any point j > i. Four rows are
// accumulated side by side; each accumulator sums dimensions in the same
// order as squared_distance, so the result is identical to the naive loop.
double row_max_squared(const Dataset& points, std::size_t i) {
  const std::size_t n = points.size();
  const std::size_t d = points.dim();
  const double* base = points.coords().data();
  const double* pi = base + i * d;
  double best = 0.0;
  std::size_t j = i + 1;
  for (; j + 4 <= n; j += 4) {
    const double* p0 = base + j * d;
    const double* p1 = p0 + d;
    const double* p2 = p1 + d;
    const double* p3 = p2 + d;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double x = pi[k];
      const double e0 = p0[k] - x, e1 = p1[k] - x, e2 = p2[k] - x, e3 = p3[k] - x;
      s0 += e0 * e0;
      s1 += e1 * e1;
      s2 += e2 * e2;
      s3 += e3 * e3;
    }
    best = std::max({best, s0, s1, s2, s3});
  }
  for (; j < n; ++j) best = std::max(best, squared_distance(points.point(j), {pi, d}));
  return best;
}

}  // namespace

double trivial_radius(double box_width, std::size_t dim, double c) {
  return (1.0 + c) * std::sqrt(static_cast<double>(dim)) * box_width / (2.0 * (c - 1.0));
}

DatasetStats compute_stats(const Dataset& points, double c) {
  if (!(c > 1.0)) throw ParamError("compute_stats: c must be > 1");
  const std::size_t n = points.size();
  const std::size_t d = points.dim();

  Point lo(points.point(0).begin(), points.point(0).end());
  Point hi = lo;
  for (std::size_t i = 1; i < n; ++i) {
    const auto p = points.point(i);
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }

  DatasetStats stats;
  stats.center.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    stats.box_width = std::max(stats.box_width, hi[k] - lo[k]);
    stats.center[k] = 0.5 * (hi[k] + lo[k]);
  }

  std::vector<double> row_best(n, 0.0);
  parallel_for(n, [&](std::size_t i) { row_best[i] = row_max_squared(points, i); });
  double best = 0.0;
  for (double v : row_best) best = std::max(best, v);
  stats.diameter = std::sqrt(best);
  stats.radius = trivial_radius(stats.box_width, d, c);
  return stats;
}

}  // namespace afn
