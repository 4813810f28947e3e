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

#include <cmath>
#include <limits>
#include <numbers>

#include "afn/error.h"
#include "afn/parallel.h"
#include "afn/stats.h"

namespace afn {

Point grid_snap(std::span<const double> q, double eta) {
  if (!(eta > 0.0)) throw ParamError("grid spacing must be positive");
  Point g(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double x = q[i] >= 0.0 ? std::floor(q[i] / eta) : std::ceil(q[i] / eta);
    g[i] = eta * x;
    // eta * floor(q/eta) can round past q by an ulp; keep |g_i| <= |q_i|.
    if (std::abs(g[i]) > std::abs(q[i])) g[i] = std::nextafter(g[i], 0.0);
  }
  return g;
}

std::optional<std::uint64_t> grid_cardinality_bound(double r, double eta, std::size_t d) {
  if (!(eta > 0.0) || !(r >= 0.0)) throw ParamError("grid needs eta > 0 and r >= 0");
  const double side = 2.0 * r / eta + 1.0;
  const double log_bound = static_cast<double>(d) * std::log2(side);
  if (!(log_bound < 63.0)) return std::nullopt;
  return static_cast<std::uint64_t>(std::ceil(std::pow(side, static_cast<double>(d))));
}

std::vector<Point> enumerate_grid(double r, double eta, std::size_t d) {
  if (d == 0 || d > 3) throw ParamError("grid enumeration supports 1 <= d <= 3");
  if (!(eta > 0.0) || !(r >= 0.0)) throw ParamError("grid needs eta > 0 and r >= 0");
  const auto reach = static_cast<long long>(std::floor(r / eta));
  std::vector<Point> out;
  std::vector<long long> x(d, -reach);
  while (true) {
    Point g(d);
    double sq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      g[i] = eta * static_cast<double>(x[i]);
      sq += g[i] * g[i];
    }
    if (sq <= r * r) out.push_back(std::move(g));
    std::size_t i = 0;
    while (i < d && x[i] == reach) x[i++] = -reach;
    if (i == d) break;
    ++x[i];
  }
  return out;
}

TransferReport goodness_transfer_check(const Dataset& points, double diameter,
                                       std::span<const double> q,
                                       std::span<const double> q_prime,
                                       const ProjectionMatrix& matrix, double c, double delta,
                                       double t) {
  const double n = static_cast<double>(points.size());
  TransferReport r;
  r.gap = distance(q, q_prime);
  r.gap_limit = diameter / (n * n * n);
  // The perturbation is usually constructed at exactly the limit.
  r.gap_ok = r.gap <= r.gap_limit * (1.0 + 1e-9);
  r.delta_ok = delta >= 1.0 / n;
  r.norm_ok = true;
  for (std::size_t j = 0; j < matrix.count(); ++j) {
    if (norm(matrix.vector(j)) > n) r.norm_ok = false;
  }
  r.q_report = is_good(points, q, matrix, c, delta, t);
  r.q_prime_report = is_good(points, q_prime, matrix, c, 0.0, t);
  r.counterexample = r.hypotheses_met() && r.q_report.is_good && !r.q_prime_report.is_good;
  return r;
}

TransferReport goodness_transfer_check(const Dataset& points, std::span<const double> q,
                                       std::span<const double> q_prime,
                                       const ProjectionMatrix& matrix, double c, double delta,
                                       double t) {
  return goodness_transfer_check(points, compute_stats(points, c).diameter, q, q_prime, matrix,
                                 c, delta, t);
}

KHalfReport k_half_concentration(const Dataset& points, const std::vector<Point>& queries,
                                 const KHalfOptions& options, RngStream stream) {
  if (options.k == 0 || options.trials == 0 || options.N == 0) {
    throw ParamError("k_half_concentration: k, trials and N must be >= 1");
  }
  for (const Point& q : queries) check_dimension(q, points.dim());
  const double cap = static_cast<double>(points.size());

  std::vector<std::size_t> good(options.trials, 0);
  std::vector<std::size_t> failures(options.trials, 0);
  parallel_for(options.trials, [&](std::size_t trial) {
    Rng rng(stream.derive(trial));
    std::vector<std::size_t> counts(queries.size(), 0);
    for (std::size_t i = 0; i < options.k; ++i) {
      const ProjectionMatrix A =
          ProjectionMatrix::sample(options.N, points.dim(), cap, rng);
      const GoodnessEvaluator eval(points, A);
      for (std::size_t j = 0; j < queries.size(); ++j) {
        if (eval.evaluate(queries[j], options.c, options.delta, options.t).is_good) ++counts[j];
      }
    }
    for (std::size_t count : counts) {
      good[trial] += count;
      // Fewer than k/2 good matrices.
      if (2 * count < options.k) ++failures[trial];
    }
  });

  KHalfReport r;
  r.k = options.k;
  r.trials = options.trials;
  r.queries = queries.size();
  for (std::size_t i = 0; i < options.trials; ++i) {
    r.good += good[i];
    r.failures += failures[i];
  }
  const double pairs = static_cast<double>(options.trials * queries.size());
  if (pairs > 0.0) {
    r.per_matrix_rate = static_cast<double>(r.good) / (pairs * static_cast<double>(options.k));
    r.failure_fraction = static_cast<double>(r.failures) / pairs;
  }
  return r;
}

double sampling_miss_rate(std::size_t k, std::size_t m, std::size_t trials, RngStream stream) {
  if (k < 2 || trials == 0) throw ParamError("sampling_miss_rate: need k >= 2 and trials >= 1");
  Rng rng(stream);
  // Indices [0, k/2) are the marked half.
  const std::size_t marked = k / 2;
  std::size_t misses = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    bool hit = false;
    for (std::size_t s = 0; s < m; ++s) {
      if (rng.index(k) < marked) hit = true;
    }
    if (!hit) ++misses;
  }
  return static_cast<double>(misses) / static_cast<double>(trials);
}

double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double gaussian_tail_upper(double x) { return std::exp(-0.5 * x * x) / x; }

double gaussian_tail_lower(double x) {
  const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return x / (1.0 + x * x) * phi;
}

TailEstimate monte_carlo_tail(double x, std::size_t samples, Rng& rng) {
  if (samples == 0) throw ParamError("monte_carlo_tail: samples must be >= 1");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (rng.normal() >= x) ++hits;
  }
  TailEstimate e;
  e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(samples));
  return e;
}

}  // namespace afn
