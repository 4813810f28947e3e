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

#include "afn/dataset.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "afn/error.h"

namespace afn {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv_bytes(std::uint64_t h, const unsigned char* bytes,
                        std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t fnv_u64(std::uint64_t h, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  return fnv_bytes(h, buf, 8);
}

std::uint64_t fnv_doubles(std::uint64_t h, std::span<const double> values) {
  for (double v : values) h = fnv_u64(h, std::bit_cast<std::uint64_t>(v));
  return h;
}

}  // namespace

Dataset::Dataset(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw InputError("dataset dimension must be at least 1");
  if (coords_.empty()) throw InputError("dataset must contain at least one point");
  if (coords_.size() % dim_ != 0) {
    throw InputError("coordinate count " + std::to_string(coords_.size()) +
                     " is not a multiple of dimension " + std::to_string(dim_));
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) {
      throw InputError("non-finite coordinate in point " +
                       std::to_string(i / dim_));
    }
  }
}

Dataset Dataset::from_points(const std::vector<Point>& points) {
  if (points.empty()) throw InputError("dataset must contain at least one point");
  const std::size_t dim = points.front().size();
  std::vector<double> coords;
  coords.reserve(points.size() * dim);
  for (const Point& p : points) {
    if (p.size() != dim) throw InputError("points have differing dimensions");
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return Dataset(dim, std::move(coords));
}

std::uint64_t Dataset::fingerprint() const {
  std::uint64_t h = fnv_u64(kFnvOffset, size());
  h = fnv_u64(h, dim_);
  return fnv_doubles(h, coords_);
}

void check_dimension(std::span<const double> q, std::size_t expected) {
  if (q.size() != expected) {
    throw InputError("dimension mismatch: got " + std::to_string(q.size()) +
                     ", expected " + std::to_string(expected));
  }
}

void check_finite(std::span<const double> q) {
  for (double v : q) {
    if (!std::isfinite(v)) throw InputError("non-finite coordinate in query");
  }
}

std::uint64_t digest(std::span<const double> values) {
  return fnv_doubles(kFnvOffset, values);
}

}  // namespace afn
