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

#ifndef AFN_EXACT_H_
#define AFN_EXACT_H_

#include <span>

#include "afn/dataset.h"

namespace afn {

struct Neighbor {
  PointId id = 0;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Brute-force furthest neighbor. Ties go to the smallest id.
Neighbor exact_furthest(const Dataset& points, std::span<const double> q);

// Brute-force nearest neighbor, same tie rule.
Neighbor exact_nearest(const Dataset& points, std::span<const double> q);

}  // namespace afn

#endif  // AFN_EXACT_H_
