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

#include "afn/distance_oracle.h"

#include "afn/error.h"
#include "afn/rng.h"
#include "afn/vector_ops.h"

namespace afn {

double ExactOracle::estimate(std::span<const double> q, const Dataset& points,
                             PointId id) const {
  return distance(q, points.point(id));
}

ExactOracle exact_oracle() { return ExactOracle{}; }

PerturbedOracle::PerturbedOracle(double eps, std::uint64_t seed) : eps_(eps), seed_(seed) {
  if (!(eps >= 0.0 && eps < 1.0)) throw ParamError("oracle eps must be in [0, 1)");
}

double PerturbedOracle::estimate(std::span<const double> q, const Dataset& points,
                                 PointId id) const {
  const std::uint64_t h = splitmix64(seed_ ^ splitmix64(digest(q) + id));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  return distance(q, points.point(id)) * (1.0 + eps_ * u);
}

}  // namespace afn
