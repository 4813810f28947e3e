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

// Adaptive query game. Each round the adversary picks a query from
// everything it has seen so far (and, for the white-box strategy, the
// target's projection vectors), the target answers with fresh randomness,
// and the round is scored against the brute-force furthest neighbor.

#ifndef AFN_ADAPTIVE_H_
#define AFN_ADAPTIVE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "afn/distance_oracle.h"
#include "afn/oblivious.h"
#include "afn/rng.h"
#include "afn/robust_index.h"

namespace afn {

struct TargetAnswer {
  PointId id = 0;
  double reported_distance = 0.0;
  std::vector<std::size_t> sampled_indices;
};

// Anything the adversary can query. The introspection methods are the
// white-box view: they expose internal randomness, never mutate it.
class QueryTarget {
 public:
  virtual ~QueryTarget() = default;

  virtual std::string name() const = 0;
  virtual const Dataset& dataset() const = 0;
  virtual double c() const = 0;
  virtual double eps() const = 0;
  virtual Point center() const = 0;
  virtual double radius() const = 0;
  virtual TargetAnswer answer(std::span<const double> q, RngStream fresh) const = 0;

  virtual Ranking ranking() const = 0;
  virtual std::size_t matrix_count() const = 0;
  virtual const ProjectionMatrix& matrix(std::size_t i) const = 0;
  // Answer of the structure built on matrix i alone, with exact distances.
  virtual PointId simulate_matrix(std::size_t i, std::span<const double> q) const = 0;
};

class RobustTarget final : public QueryTarget {
 public:
  RobustTarget(const RobustIndex& index, const DistanceOracle& oracle)
      : index_(index), oracle_(oracle) {}

  std::string name() const override { return "robust"; }
  const Dataset& dataset() const override { return index_.dataset(); }
  double c() const override { return index_.params().c; }
  double eps() const override { return oracle_.eps(); }
  Point center() const override { return index_.stats().center; }
  double radius() const override { return index_.stats().radius; }
  TargetAnswer answer(std::span<const double> q, RngStream fresh) const override;

  Ranking ranking() const override { return Ranking::kSigned; }
  std::size_t matrix_count() const override { return index_.bases().size(); }
  const ProjectionMatrix& matrix(std::size_t i) const override {
    return index_.bases()[i].matrix();
  }
  PointId simulate_matrix(std::size_t i, std::span<const double> q) const override;

 private:
  const RobustIndex& index_;
  const DistanceOracle& oracle_;
};

class ObliviousTarget final : public QueryTarget {
 public:
  // The trivial-query ball for c is computed from the bounding box only.
  ObliviousTarget(const ObliviousIndex& index, double c);

  std::string name() const override { return "oblivious"; }
  const Dataset& dataset() const override { return index_.dataset(); }
  double c() const override { return c_; }
  double eps() const override { return 0.0; }
  Point center() const override { return center_; }
  double radius() const override { return radius_; }
  TargetAnswer answer(std::span<const double> q, RngStream fresh) const override;

  Ranking ranking() const override { return index_.ranking(); }
  std::size_t matrix_count() const override { return 1; }
  const ProjectionMatrix& matrix(std::size_t) const override { return index_.vectors(); }
  PointId simulate_matrix(std::size_t i, std::span<const double> q) const override;

 private:
  const ObliviousIndex& index_;
  double c_;
  Point center_;
  double radius_;
};

enum class Strategy {
  kRandom,          // uniform in B(ct, R)
  kWhiteboxAttack,  // crafted against the target's projection vectors
  kProbe,           // hill-climb on the observed approximation ratio
};

const char* strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct Round {
  std::size_t round = 0;
  Point query;
  std::uint64_t query_digest = 0;
  PointId answer_id = 0;
  PointId truth_id = 0;
  double answered_distance = 0.0;  // exact, recomputed
  double max_distance = 0.0;
  double ratio = 1.0;              // max_distance / answered_distance
  bool violated = false;           // ratio > c (1 + eps)
  std::vector<std::size_t> sampled_indices;
  std::optional<std::size_t> attacked_matrix;
  std::optional<double> attack_x;
};

struct AdversaryTranscript {
  std::string target;
  Strategy strategy = Strategy::kRandom;
  double c = 2.0;
  double eps = 0.0;
  std::vector<Round> rounds;

  std::size_t violations() const;
};

// Scores one answer against brute force. ratio is 1 when both distances
// are 0 and +inf when only the answered distance is 0.
Round score_round(const Dataset& points, std::span<const double> q, PointId answer_id,
                  double c, double eps);

// Runs T rounds. Adversary decisions use stream.derive(0); round r is
// answered with the fresh stream stream.derive(1).derive(r).
AdversaryTranscript adaptive_loop(const QueryTarget& target, Strategy strategy, std::size_t T,
                                  RngStream stream);

// One JSON object per line: round, query_digest (16 hex digits), answer_id,
// truth_id, ratio (null when infinite), violated. Violated rounds also carry
// a "witness" object with the full query and distances. A "trial" field is
// added when `trial` is set.
void write_transcript_jsonl(const AdversaryTranscript& transcript, std::ostream& out,
                            std::optional<std::size_t> trial = std::nullopt);

}  // namespace afn

#endif  // AFN_ADAPTIVE_H_
