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

#include "afn/gaussian.h"

#include "afn/error.h"

namespace afn {

Point standard_normal_vector(std::size_t dim, Rng& rng) {
  Point a(dim);
  for (double& x : a) x = rng.normal();
  return a;
}

Point gaussian_vector(std::size_t dim, double norm_cap, Rng& rng) {
  if (dim == 0) throw ParamError("gaussian_vector: dimension must be at least 1");
  if (!(norm_cap >= 2.0)) throw ParamError("gaussian_vector: norm cap must be >= 2");
  // Resampling probability is at most d * exp(-cap^2 / 2) once the cap is
  // well above sqrt(d); the attempt limit only trips on a misconfigured cap.
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    Point a = standard_normal_vector(dim, rng);
    if (norm(a) < norm_cap) return a;
  }
  throw ParamError("gaussian_vector: norm cap is unreachable for this dimension");
}

Point gaussian_vector(std::size_t dim, double norm_cap, RngStream stream) {
  Rng rng(stream);
  return gaussian_vector(dim, norm_cap, rng);
}

}  // namespace afn
