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

#ifndef AFN_GAUSSIAN_H_
#define AFN_GAUSSIAN_H_

#include <cstddef>

#include "afn/rng.h"
#include "afn/vector_ops.h"

namespace afn {

// i.i.d. N(0, 1) coordinates, resampled until the norm is strictly below
// norm_cap. Requires dim >= 1 and norm_cap >= 2.
Point gaussian_vector(std::size_t dim, double norm_cap, Rng& rng);
Point gaussian_vector(std::size_t dim, double norm_cap, RngStream stream);

// i.i.d. N(0, 1) coordinates with no cap.
Point standard_normal_vector(std::size_t dim, Rng& rng);

}  // namespace afn

#endif  // AFN_GAUSSIAN_H_
