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

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "afn/base_index.h"
#include "afn/distance_oracle.h"
#include "afn/error.h"
#include "afn/exact.h"
#include "afn/index_io.h"
#include "afn/robust_index.h"
#include "oracles.h"

namespace afn {
namespace {

using testing::random_dataset;

std::shared_ptr<const Dataset> shared(Dataset d) {
  return std::make_shared<const Dataset>(std::move(d));
}

Params small_params(std::size_t n, std::size_t d, std::size_t k, std::size_t m) {
  ParamOverrides o;
  o.k = k;
  o.m = m;
  return derive_params(n, d, 2.0, 0.0, o);
}

TEST(BuildRobustTest, CandidateSetBound) {
  auto P = shared(random_dataset(64, 8, 1));
  const Params params = derive_params(64, 8, 2.0, 0.0);
  const RobustIndex idx = build_robust(P, params, 5);
  EXPECT_EQ(idx.bases().size(), params.k);
  EXPECT_LE(idx.p_hat().size(), std::min<std::size_t>(64, params.k * params.N * (8 * params.N + 1)));
  EXPECT_TRUE(std::is_sorted(idx.p_hat().begin(), idx.p_hat().end()));
  for (const BaseIndex& b : idx.bases()) {
    EXPECT_LT(b.matrix().max_norm(), 64.0);
  }
}

TEST(BuildRobustTest, DeterministicPerSeed) {
  auto P = shared(random_dataset(100, 6, 2));
  const Params params = small_params(100, 6, 12, 4);
  const RobustIndex a = build_robust(P, params, 9);
  const RobustIndex b = build_robust(P, params, 9);
  const RobustIndex c = build_robust(P, params, 10);
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == c);
  // Bases draw from independent streams.
  EXPECT_FALSE(a.bases()[0].matrix() == a.bases()[1].matrix());
}

TEST(BuildRobustTest, Errors) {
  EXPECT_THROW(build_robust(nullptr, Params{}, 1), InputError);
  auto one = shared(Dataset(1, {0.0}));
  Params p = derive_params(2, 1, 2.0, 0.0);
  EXPECT_THROW(build_robust(one, p, 1), InputError);
  // Norm cap n = 2 is far below sqrt(d) = 10.
  auto tiny = shared(random_dataset(2, 100, 1));
  EXPECT_THROW(build_robust(tiny, derive_params(2, 100, 2.0, 0.0), 1), ParamError);
}

TEST(QueryTest, TwoPointLine) {
  auto P = shared(Dataset(1, {0.0, 10.0}));
  const RobustIndex idx = build_robust(P, small_params(2, 1, 4, 3), 1);
  const ExactOracle oracle;
  const QueryAnswer a = query(idx, Point{0.0}, RngStream{1, 2}, oracle);
  EXPECT_FALSE(a.trivial);
  EXPECT_EQ(a.point_id, 1u);
  EXPECT_EQ(a.reported_distance, 10.0);
  EXPECT_EQ(a.sampled_indices.size(), 3u);
  EXPECT_EQ(a.oracle_eps, 0.0);
}

TEST(QueryTest, CenterIsNotTrivial) {
  auto P = shared(random_dataset(50, 4, 3));
  const RobustIndex idx = build_robust(P, small_params(50, 4, 8, 4), 1);
  EXPECT_FALSE(trivial_check(idx.stats(), idx.stats().center));
  const QueryAnswer a = query(idx, idx.stats().center, RngStream{3, 3}, ExactOracle{});
  EXPECT_FALSE(a.trivial);
  EXPECT_EQ(a.sampled_indices.size(), 4u);
}

TEST(TrivialCheckTest, Examples) {
  const Dataset P = Dataset::from_points({{-1, 0}, {1, 0}});
  const DatasetStats s = compute_stats(P, 3.0);
  const Point q{3.0, 0.0};
  EXPECT_TRUE(trivial_check(s, q));
  const double lo = exact_nearest(P, q).distance;
  const double hi = exact_furthest(P, q).distance;
  EXPECT_EQ(lo, 2.0);
  EXPECT_EQ(hi, 4.0);
  EXPECT_GE(lo, hi / 3.0);
  EXPECT_FALSE(trivial_check(s, s.center));

  DatasetStats exact;
  exact.center = {0.0, 0.0};
  exact.radius = 5.0;
  EXPECT_TRUE(trivial_check(exact, Point{3.0, 4.0}));
  EXPECT_FALSE(trivial_check(exact, Point{3.0, 3.9}));
}

TEST(QueryTest, KOneMatchesBaseQuery) {
  auto P = shared(random_dataset(150, 10, 4));
  ParamOverrides o;
  o.k = 1;
  o.m = 1;
  o.shortcut = false;
  const RobustIndex idx = build_robust(P, derive_params(150, 10, 2.0, 0.0, o), 4);
  std::mt19937_64 gen(4);
  for (int i = 0; i < 50; ++i) {
    const Point q = testing::random_point(10, gen, 2.0);
    std::vector<PointId> ids = query_base(idx.bases()[0], q);
    std::sort(ids.begin(), ids.end());
    PointId best = ids[0];
    for (PointId id : ids) {
      if (distance(q, P->point(id)) > distance(q, P->point(best))) best = id;
    }
    const QueryAnswer a = query(idx, q, RngStream{4, static_cast<std::uint64_t>(i)}, ExactOracle{});
    EXPECT_EQ(a.point_id, best);
    EXPECT_EQ(a.sampled_indices, std::vector<std::size_t>{0});
  }
}

TEST(QueryTest, AnswerContract) {
  auto P = shared(random_dataset(200, 12, 5));
  const RobustIndex idx = build_robust(P, small_params(200, 12, 16, 6), 5);
  const std::size_t budget = idx.params().candidates();
  std::mt19937_64 gen(5);
  for (int i = 0; i < 100; ++i) {
    const Point q = testing::random_point(12, gen, 1.5);
    const QueryAnswer a = query(idx, q, RngStream{5, static_cast<std::uint64_t>(i)}, ExactOracle{});
    if (a.trivial) continue;
    EXPECT_LE(a.candidate_pairs, idx.params().m * budget);
    EXPECT_EQ(a.reported_distance, distance(q, P->point(a.point_id)));
    std::set<PointId> union_ids;
    double best = 0.0;
    for (std::size_t b : a.sampled_indices) {
      ASSERT_LT(b, idx.params().k);
      for (PointId id : query_base(idx.bases()[b], q)) {
        union_ids.insert(id);
        best = std::max(best, distance(q, P->point(id)));
      }
    }
    EXPECT_TRUE(union_ids.count(a.point_id));
    EXPECT_EQ(a.unique_candidates, union_ids.size());
    EXPECT_EQ(a.reported_distance, best);
  }
}

TEST(QueryTest, ShortcutSoundOnFarQueries) {
  std::mt19937_64 gen(6);
  for (int ds = 0; ds < 4; ++ds) {
    auto P = shared(random_dataset(120, 6, 60 + ds));
    const RobustIndex idx = build_robust(P, small_params(120, 6, 8, 4), ds);
    const double R = idx.stats().radius;
    for (int i = 0; i < 250; ++i) {
      Point dir = testing::random_point(6, gen);
      const double len = norm(dir);
      Point q = idx.stats().center;
      const double r = R * (1.0 + 3.0 * std::uniform_real_distribution<double>(0, 1)(gen));
      for (std::size_t j = 0; j < 6; ++j) q[j] += r * dir[j] / len;
      if (!trivial_check(idx.stats(), q)) continue;
      const QueryAnswer a = query(idx, q, RngStream{6, static_cast<std::uint64_t>(i)}, ExactOracle{});
      ASSERT_TRUE(a.trivial);
      EXPECT_EQ(a.point_id, idx.p_hat().front());
      EXPECT_TRUE(a.sampled_indices.empty());
      const double far = exact_furthest(*P, q).distance;
      for (PointId id : idx.p_hat()) {
        ASSERT_GE(distance(q, P->point(id)), far / 2.0 * (1 - 1e-12));
      }
    }
  }
}

TEST(QueryTest, ShortcutCanBeDisabled) {
  auto P = shared(random_dataset(60, 3, 7));
  ParamOverrides o;
  o.k = 6;
  o.m = 3;
  o.shortcut = false;
  const RobustIndex idx = build_robust(P, derive_params(60, 3, 2.0, 0.0, o), 7);
  const Point q{1e4, 0.0, 0.0};
  const QueryAnswer a = query(idx, q, RngStream{7, 0}, ExactOracle{});
  EXPECT_FALSE(a.trivial);
  EXPECT_EQ(a.sampled_indices.size(), 3u);
}

TEST(QueryTest, IndexUnchangedAndStreamDeterministic) {
  auto P = shared(random_dataset(80, 5, 8));
  const RobustIndex idx = build_robust(P, small_params(80, 5, 10, 4), 8);
  const RobustIndex copy = idx;
  const Point q{0.1, -0.2, 0.3, 0.0, 0.5};
  const QueryAnswer a = query(idx, q, RngStream{8, 1}, ExactOracle{});
  for (int i = 0; i < 20; ++i) query(idx, q, RngStream{8, 100u + i}, ExactOracle{});
  const QueryAnswer b = query(idx, q, RngStream{8, 1}, ExactOracle{});
  EXPECT_TRUE(idx == copy);
  EXPECT_EQ(a.point_id, b.point_id);
  EXPECT_EQ(a.sampled_indices, b.sampled_indices);
}

TEST(QueryTest, DimensionAndFiniteness) {
  auto P = shared(random_dataset(20, 3, 9));
  const RobustIndex idx = build_robust(P, small_params(20, 3, 4, 2), 9);
  EXPECT_THROW(query(idx, Point{0.0, 0.0}, RngStream{}, ExactOracle{}), InputError);
  EXPECT_THROW(query(idx, Point{0.0, 0.0, std::nan("")}, RngStream{}, ExactOracle{}), InputError);
}

TEST(QueryTest, DegenerateDatasetAnswersIdZero) {
  auto P = shared(Dataset(2, std::vector<double>(20, 1.5)));
  const RobustIndex idx = build_robust(P, small_params(10, 2, 4, 2), 1);
  EXPECT_EQ(idx.stats().diameter, 0.0);
  for (const Point& q : {Point{1.5, 1.5}, Point{0.0, 9.0}}) {
    EXPECT_EQ(query(idx, q, RngStream{1, 1}, ExactOracle{}).point_id, 0u);
  }
}

TEST(SampleIndicesTest, RangeAndRepetition) {
  Rng rng(RngStream{12, 0});
  const std::vector<std::size_t> s = sample_indices(3, 500, rng);
  ASSERT_EQ(s.size(), 500u);
  std::vector<int> hist(3, 0);
  for (std::size_t i : s) {
    ASSERT_LT(i, 3u);
    ++hist[i];
  }
  for (int h : hist) EXPECT_GT(h, 100);
  EXPECT_THROW(sample_indices(0, 1, rng), ParamError);
}

TEST(OracleTest, PerturbedStaysInBand) {
  const Dataset P = random_dataset(40, 4, 13);
  const PerturbedOracle oracle(0.1, 99);
  std::mt19937_64 gen(13);
  bool moved = false;
  for (int i = 0; i < 20; ++i) {
    const Point q = testing::random_point(4, gen);
    for (PointId id = 0; id < P.size(); ++id) {
      const double exact = distance(q, P.point(id));
      const double est = oracle.estimate(q, P, id);
      EXPECT_GE(est, 0.9 * exact);
      EXPECT_LE(est, 1.1 * exact);
      EXPECT_EQ(est, oracle.estimate(q, P, id));
      moved |= est != exact;
    }
  }
  EXPECT_TRUE(moved);
  EXPECT_THROW(PerturbedOracle(1.0, 1), ParamError);
  EXPECT_THROW(PerturbedOracle(-0.1, 1), ParamError);
}

TEST(OracleTest, PerturbedSelectionWithinBand) {
  auto P = shared(random_dataset(150, 8, 14));
  const RobustIndex idx = build_robust(P, small_params(150, 8, 10, 5), 14);
  const PerturbedOracle oracle(0.1, 7);
  std::mt19937_64 gen(14);
  for (int i = 0; i < 100; ++i) {
    const Point q = testing::random_point(8, gen);
    const QueryAnswer a = query(idx, q, RngStream{14, static_cast<std::uint64_t>(i)}, oracle);
    if (a.trivial) continue;
    EXPECT_EQ(a.oracle_eps, 0.1);
    EXPECT_EQ(a.reported_distance, oracle.estimate(q, *P, a.point_id));
    double best = 0.0;
    for (std::size_t b : a.sampled_indices) {
      for (PointId id : query_base(idx.bases()[b], q)) best = std::max(best, distance(q, P->point(id)));
    }
    EXPECT_GE(distance(q, P->point(a.point_id)) * 1.1, best * 0.9);
  }
}

TEST(QueryTest, RandomQueriesMeetApproximationRate) {
  auto P = shared(random_dataset(1024, 64, 15));
  const RobustIndex idx = build_robust(P, derive_params(1024, 64, 2.0, 0.0), 15);
  std::mt19937_64 gen(15);
  int ok = 0;
  for (int i = 0; i < 1000; ++i) {
    const Point q = testing::random_point(64, gen);
    const QueryAnswer a = query(idx, q, RngStream{15, static_cast<std::uint64_t>(i)}, ExactOracle{});
    ok += distance(q, P->point(a.point_id)) >= exact_furthest(*P, q).distance / 2.0;
  }
  EXPECT_GE(ok, 990);
}

TEST(IndexIoTest, RoundTripBitExact) {
  auto P = shared(random_dataset(70, 5, 16));
  ParamOverrides o;
  o.k = 7;
  o.m = 3;
  o.shortcut = false;
  o.candidate_budget = 21;
  const RobustIndex idx = build_robust(P, derive_params(70, 5, 2.5, 0.05, o), 16);
  std::stringstream buf;
  write_index(idx, buf);
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.substr(0, 4), "AFNI");
  const RobustIndex back = read_index(buf, P);
  EXPECT_TRUE(back == idx);
  std::stringstream again;
  write_index(back, again);
  EXPECT_EQ(again.str(), bytes);
}

TEST(IndexIoTest, RejectsWrongDataset) {
  auto P = shared(random_dataset(30, 3, 17));
  const RobustIndex idx = build_robust(P, small_params(30, 3, 4, 2), 17);
  std::stringstream buf;
  write_index(idx, buf);
  EXPECT_THROW(read_index(buf, shared(random_dataset(30, 3, 18))), Error);
}

TEST(IndexIoTest, CorruptionReportsOffset) {
  auto P = shared(random_dataset(30, 3, 19));
  const RobustIndex idx = build_robust(P, small_params(30, 3, 4, 2), 19);
  std::stringstream buf;
  write_index(idx, buf);
  const std::string bytes = buf.str();

  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  std::istringstream in1(bad_magic);
  EXPECT_THROW(read_index(in1, P), FormatError);

  std::istringstream in2(bytes.substr(0, bytes.size() / 2));
  try {
    read_index(in2, P);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_LE(e.offset(), bytes.size() / 2);
    EXPECT_NE(std::string(e.what()).find("offset"), std::string::npos);
  }
}

}  // namespace
}  // namespace afn
