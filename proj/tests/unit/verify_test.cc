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

#include "afn/verify.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "afn/params.h"
#include "afn/stats.h"
#include "oracles.h"

namespace afn {
namespace {

using ::afn::testing::naive_dist;
using ::afn::testing::random_dataset;
using ::afn::testing::random_point;

double norm(std::span<const double> v) {
  const std::vector<double> zero(v.size(), 0.0);
  return naive_dist(v, zero);
}

TEST(GridSnapTest, HandExample) {
  const std::vector<double> q = {0.7, -1.2};
  const Point g = grid_snap(q, 0.5);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_DOUBLE_EQ(g[0], 0.5);
  EXPECT_DOUBLE_EQ(g[1], -1.0);
  EXPECT_NEAR(naive_dist(g, q), std::sqrt(0.08), 1e-12);
  EXPECT_LE(naive_dist(g, q), std::sqrt(2.0) * 0.5);
}

TEST(GridSnapTest, GridPointsAreFixed) {
  const std::vector<double> q = {1.5, -0.25, 0.0, 3.0};
  EXPECT_EQ(grid_snap(q, 0.25), Point(q.begin(), q.end()));
  // Multiples of a non-dyadic spacing survive the rounding too.
  const double eta = 0.1;
  const std::vector<double> r = {3 * eta, -9 * eta, 17 * eta};
  EXPECT_EQ(grid_snap(r, eta), Point(r.begin(), r.end()));
}

TEST(GridSnapTest, RandomQueriesInBall) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> eta_dist(0.01, 0.8);
  const double r = 2.5;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> q(3);
    do {
      for (double& x : q) x = r * u(gen);
    } while (norm(q) > r);
    const double eta = eta_dist(gen);
    const Point g = grid_snap(q, eta);
    EXPECT_LE(naive_dist(g, q), std::sqrt(3.0) * eta * (1 + 1e-12));
    EXPECT_LE(norm(g), norm(q) * (1 + 1e-12));
    EXPECT_LE(norm(g), r);
    for (std::size_t j = 0; j < 3; ++j) {
      const double steps = g[j] / eta;
      EXPECT_NEAR(steps, std::round(steps), 1e-6);
    }
  }
}

TEST(GridCardinalityTest, UnitDisk) {
  EXPECT_EQ(grid_cardinality_bound(1.0, 1.0, 2), std::optional<std::uint64_t>(9));
  const std::vector<Point> grid = enumerate_grid(1.0, 1.0, 2);
  const std::set<Point> want = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  EXPECT_EQ(std::set<Point>(grid.begin(), grid.end()), want);
}

TEST(GridCardinalityTest, EnumerationMatchesNaiveCountAndBound) {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (double eta : {0.15, 0.3, 0.7, 1.1}) {
      const double r = 1.3;
      const long lim = static_cast<long>(std::floor(r / eta)) + 1;
      std::size_t naive = 0;
      std::vector<long> x(d, -lim);
      while (true) {
        double s = 0.0;
        for (long xi : x) s += (xi * eta) * (xi * eta);
        if (std::sqrt(s) <= r) ++naive;
        std::size_t j = 0;
        while (j < d && ++x[j] > lim) x[j++] = -lim;
        if (j == d) break;
      }
      const std::vector<Point> grid = enumerate_grid(r, eta, d);
      EXPECT_EQ(grid.size(), naive) << "d=" << d << " eta=" << eta;
      const auto bound = grid_cardinality_bound(r, eta, d);
      ASSERT_TRUE(bound.has_value());
      EXPECT_LE(grid.size(), *bound);
    }
  }
}

TEST(GridCardinalityTest, CoarseGridHoldsOrigin) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto bound = grid_cardinality_bound(1.0, 2.0, d);
    ASSERT_TRUE(bound.has_value());
    EXPECT_LE(*bound, 1u << d);
    const std::vector<Point> grid = enumerate_grid(1.0, 2.0, d);
    ASSERT_EQ(grid.size(), 1u);
    EXPECT_EQ(grid[0], Point(d, 0.0));
  }
}

TEST(GridCardinalityTest, MonotoneInEtaAndOverflow) {
  std::uint64_t prev = UINT64_MAX;
  for (double eta = 0.01; eta < 4.0; eta *= 1.3) {
    const auto b = grid_cardinality_bound(2.0, eta, 3);
    ASSERT_TRUE(b.has_value());
    EXPECT_LE(*b, prev);
    prev = *b;
  }
  EXPECT_FALSE(grid_cardinality_bound(1.0, 1e-6, 64).has_value());
  EXPECT_FALSE(grid_cardinality_bound(1.0, 1.0, 100).has_value());
}

TEST(GoodnessTransferTest, IdenticalQueryTransfers) {
  const std::size_t n = 64, d = 8;
  const Dataset P = random_dataset(n, d, 5);
  const Params p = derive_params(n, d, 2.0, 0.0);
  Rng rng(RngStream{5, 0});
  std::mt19937_64 gen(5);
  std::size_t premises = 0;
  for (int i = 0; i < 50; ++i) {
    const ProjectionMatrix A = ProjectionMatrix::sample(p.N, d, double(n), rng);
    const std::vector<double> q = random_point(d, gen);
    const TransferReport rep = goodness_transfer_check(P, q, q, A, 2.0, p.delta, p.t);
    EXPECT_TRUE(rep.hypotheses_met());
    EXPECT_EQ(rep.gap, 0.0);
    EXPECT_FALSE(rep.counterexample);
    if (rep.q_report.is_good) {
      ++premises;
      EXPECT_TRUE(rep.q_prime_report.is_good);
    }
  }
  EXPECT_GT(premises, 0u);
}

TEST(GoodnessTransferTest, NoCounterexampleAtTheGapLimit) {
  std::mt19937_64 gen(17);
  std::size_t premises = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 32 + 16 * (i % 4), d = 4 + 4 * (i % 3);
    const Dataset P = random_dataset(n, d, 1000 + i);
    const Params p = derive_params(n, d, 2.0, 0.0);
    Rng rng(RngStream{17, static_cast<std::uint64_t>(i)});
    const ProjectionMatrix A = ProjectionMatrix::sample(p.N, d, double(n), rng);
    const double diam = compute_stats(P, 2.0).diameter;
    const std::vector<double> q = random_point(d, gen);
    std::vector<double> u = random_point(d, gen);
    const double un = norm(u);
    const double gap = diam / (double(n) * n * n);
    std::vector<double> qp(d);
    for (std::size_t j = 0; j < d; ++j) qp[j] = q[j] + gap * u[j] / un;
    const TransferReport rep = goodness_transfer_check(P, diam, q, qp, A, 2.0, p.delta, p.t);
    ASSERT_TRUE(rep.hypotheses_met()) << "instance " << i << " gap " << rep.gap;
    EXPECT_FALSE(rep.counterexample) << "instance " << i;
    if (rep.q_report.is_good) ++premises;
  }
  EXPECT_GT(premises, 100u);
}

TEST(GoodnessTransferTest, HypothesisGuard) {
  const std::size_t n = 32, d = 4;
  const Dataset P = random_dataset(n, d, 3);
  const Params p = derive_params(n, d, 2.0, 0.0);
  Rng rng(RngStream{3, 0});
  const ProjectionMatrix A = ProjectionMatrix::sample(p.N, d, double(n), rng);
  const double diam = compute_stats(P, 2.0).diameter;
  std::vector<double> q(d, 0.0), qp(d, 0.0);
  qp[0] = diam;
  const TransferReport rep = goodness_transfer_check(P, diam, q, qp, A, 2.0, p.delta, p.t);
  EXPECT_FALSE(rep.gap_ok);
  EXPECT_FALSE(rep.hypotheses_met());
  EXPECT_FALSE(rep.counterexample);

  const TransferReport small_delta = goodness_transfer_check(P, diam, q, q, A, 2.0, 0.0, p.t);
  EXPECT_FALSE(small_delta.delta_ok);
  EXPECT_FALSE(small_delta.counterexample);
}

class KHalfTest : public ::testing::Test {
 protected:
  static constexpr std::size_t kN = 256, kD = 16;
  void SetUp() override {
    P_ = random_dataset(kN, kD, 21);
    std::mt19937_64 gen(22);
    for (int i = 0; i < 20; ++i) queries_.push_back(random_point(kD, gen));
    // const_N = 6 puts the per-matrix rate near 0.8 at this size.
    ParamOverrides o;
    o.const_N = 6.0;
    const Params p = derive_params(kN, kD, 2.0, 0.0, o);
    opt_.N = p.N;
    opt_.c = 2.0;
    opt_.delta = p.delta;
    opt_.t = p.t;
    opt_.trials = 200;
  }
  Dataset P_{1, {0.0}};
  std::vector<Point> queries_;
  KHalfOptions opt_;
};

TEST_F(KHalfTest, FailureFractionDropsWithK) {
  KHalfOptions small = opt_, large = opt_;
  small.k = 8;
  large.k = 64;
  const KHalfReport a = k_half_concentration(P_, queries_, small, RngStream{1, 0});
  const KHalfReport b = k_half_concentration(P_, queries_, large, RngStream{1, 1});
  EXPECT_EQ(a.queries, queries_.size());
  EXPECT_GE(a.per_matrix_rate, 0.70);
  EXPECT_GE(b.per_matrix_rate, 0.70);
  EXPECT_GT(a.failures, 0u);
  EXPECT_LT(b.failure_fraction, a.failure_fraction);
}

TEST_F(KHalfTest, NonIncreasingInKForMostSeeds) {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    KHalfOptions o = opt_;
    o.trials = 40;
    std::vector<double> frac;
    for (std::size_t k : {2, 8, 32}) {
      o.k = k;
      frac.push_back(k_half_concentration(P_, queries_, o, RngStream{30 + seed, k}).failure_fraction);
    }
    ok += frac[1] <= frac[0] && frac[2] <= frac[1];
  }
  EXPECT_GE(ok, 2);
}

TEST_F(KHalfTest, SingleMatrixFailureIsComplementOfRate) {
  KHalfOptions one = opt_;
  one.k = 1;
  const KHalfReport r = k_half_concentration(P_, queries_, one, RngStream{2, 0});
  EXPECT_NEAR(r.failure_fraction, 1.0 - r.per_matrix_rate, 1e-12);
}

TEST_F(KHalfTest, DeterministicAcrossRuns) {
  KHalfOptions o = opt_;
  o.k = 4;
  o.trials = 20;
  const KHalfReport a = k_half_concentration(P_, queries_, o, RngStream{9, 9});
  const KHalfReport b = k_half_concentration(P_, queries_, o, RngStream{9, 9});
  EXPECT_EQ(a.good, b.good);
  EXPECT_EQ(a.failures, b.failures);
}

TEST(SamplingMissTest, BelowTwoToMinusM) {
  const std::size_t trials = 200000;
  for (std::size_t m : {1, 2, 4, 8}) {
    const double rate = sampling_miss_rate(64, m, trials, RngStream{4, m});
    const double p = std::ldexp(1.0, -static_cast<int>(m));
    const double sigma = std::sqrt(p * (1 - p) / trials);
    EXPECT_LE(rate, p + 3 * sigma) << "m=" << m;
    EXPECT_GE(rate, p - 3 * sigma) << "m=" << m;
  }
}

TEST(GaussianTailTest, FrozenValues) {
  EXPECT_NEAR(gaussian_tail(1.0), 0.15865525393145705, 1e-15);
  EXPECT_NEAR(gaussian_tail(2.0), 0.022750131948179207, 1e-16);
  EXPECT_NEAR(gaussian_tail(3.0), 0.0013498980316300945, 1e-17);
}

TEST(GaussianTailTest, BoundsBracketTail) {
  for (double x = 0.25; x < 8.0; x += 0.25) {
    EXPECT_LE(gaussian_tail_lower(x), gaussian_tail(x)) << x;
    EXPECT_GE(gaussian_tail_upper(x), gaussian_tail(x)) << x;
  }
}

TEST(GaussianTailTest, MonteCarloAgrees) {
  Rng rng(RngStream{8, 0});
  for (double x : {1.0, 2.0, 3.0}) {
    const TailEstimate e = monte_carlo_tail(x, 400000, rng);
    EXPECT_GT(e.std_error, 0.0);
    EXPECT_NEAR(e.estimate, gaussian_tail(x), 3 * e.std_error + 1e-12) << x;
  }
}

}  // namespace
}  // namespace afn
