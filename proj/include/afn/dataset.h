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

#ifndef AFN_DATASET_H_
#define AFN_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "afn/vector_ops.h"

namespace afn {

// Point ids are stable 0-based row indices.
using PointId = std::uint32_t;

// n points in R^d stored row-major. Immutable once constructed; the
// constructor rejects empty sets, d = 0 and non-finite coordinates.
class Dataset {
 public:
  Dataset(std::size_t dim, std::vector<double> coords);

  static Dataset from_points(const std::vector<Point>& points);

  std::size_t size() const { return coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }

  std::span<const double> point(std::size_t id) const {
    return {coords_.data() + id * dim_, dim_};
  }
  std::span<const double> coords() const { return coords_; }

  // FNV-1a over (n, d, coordinate bytes). Used to bind persisted indexes to
  // the dataset they were built from.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Dataset& a, const Dataset& b) = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

// Throws InputError unless q.size() == expected.
void check_dimension(std::span<const double> q, std::size_t expected);

// Throws InputError if any coordinate is NaN or infinite.
void check_finite(std::span<const double> q);

// FNV-1a over the little-endian bytes of the coordinates.
std::uint64_t digest(std::span<const double> values);

}  // namespace afn

#endif  // AFN_DATASET_H_
