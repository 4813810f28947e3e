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

#ifndef AFN_RNG_H_
#define AFN_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace afn {

// Names a reproducible random sequence. Identical (master_seed, stream_id)
// pairs produce identical sequences; distinct pairs are seeded through a
// SplitMix64 finalizer and are treated as independent.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  // A child stream whose id is a hash of (stream_id, sub). Children of
  // distinct parents or with distinct `sub` values are distinct streams.
  RngStream derive(std::uint64_t sub) const;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

// Generator bound to one RngStream.
class Rng {
 public:
  explicit Rng(RngStream stream);

  double normal() { return normal_(engine_); }
  // Uniform in [0, 1).
  double uniform() { return uniform_(engine_); }
  // Uniform in [0, k).
  std::size_t index(std::size_t k) {
    return std::uniform_int_distribution<std::size_t>(0, k - 1)(engine_);
  }
  std::uint64_t bits() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace afn

#endif  // AFN_RNG_H_
