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

#ifndef AFN_VECTOR_OPS_H_
#define AFN_VECTOR_OPS_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace afn {

// A point or direction in R^d. Queries and projection vectors use the same
// representation as dataset rows.
using Point = std::vector<double>;

// All inner products in the library go through this function so that a
// value stored at build time and a value recomputed at query time agree
// bit-for-bit.
inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace afn

#endif  // AFN_VECTOR_OPS_H_
