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

// Oblivious projection baseline. At query time every pair (i, p) is scored
// by |a_i.q - a_i.p| (or the signed a_i.p - a_i.q), the c_N * N best pairs
// form the candidate set S, and the exact furthest point of S is returned.

#ifndef AFN_OBLIVIOUS_H_
#define AFN_OBLIVIOUS_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "afn/base_index.h"
#include "afn/dataset.h"
#include "afn/rng.h"

namespace afn {

enum class Ranking {
  kAbsolute,  // |a_i . (q - p)|
  kSigned,    // a_i . p - a_i . q
};

const char* ranking_name(Ranking r);

class ObliviousIndex {
 public:
  ObliviousIndex(std::shared_ptr<const Dataset> points, ProjectionMatrix vectors,
                 std::size_t c_N, Ranking ranking = Ranking::kAbsolute);

  const Dataset& dataset() const { return *points_; }
  const ProjectionMatrix& vectors() const { return vectors_; }
  std::size_t c_N() const { return c_N_; }
  Ranking ranking() const { return ranking_; }
  // Number of pairs kept, c_N * N.
  std::size_t slots() const { return c_N_ * vectors_.count(); }

 private:
  std::shared_ptr<const Dataset> points_;
  ProjectionMatrix vectors_;
  std::size_t c_N_;
  Ranking ranking_;
};

// N uncapped standard normal vectors drawn from `rng`.
ObliviousIndex build_oblivious(std::shared_ptr<const Dataset> points, std::size_t N,
                               std::size_t c_N, Rng& rng,
                               Ranking ranking = Ranking::kAbsolute);

struct ObliviousAnswer {
  PointId id = 0;
  double distance = 0.0;
  // Point ids of the selected pairs in rank order, with repetitions.
  std::vector<PointId> slot_ids;
  // Distinct ids of slot_ids, ascending.
  std::vector<PointId> candidates;
};

ObliviousAnswer query_oblivious(const ObliviousIndex& index, std::span<const double> q);

}  // namespace afn

#endif  // AFN_OBLIVIOUS_H_
