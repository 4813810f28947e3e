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

// Executable forms of the analysis devices: grid coverings, goodness
// transfer to nearby queries, concentration of goodness over k matrices,
// and Gaussian tail bounds. Everything here is test and diagnostic code and
// may cost O(n N d) per call.

#ifndef AFN_VERIFY_H_
#define AFN_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "afn/base_index.h"
#include "afn/dataset.h"
#include "afn/rng.h"
#include "afn/vector_ops.h"

namespace afn {

// g = eta x with x_i = floor(q_i / eta) for q_i >= 0 and ceil(q_i / eta)
// otherwise, so |g| <= |q| and |g - q| <= sqrt(d) eta.
Point grid_snap(std::span<const double> q, double eta);

// ceil((2r/eta + 1)^d), or nullopt when it does not fit in 63 bits.
std::optional<std::uint64_t> grid_cardinality_bound(double r, double eta, std::size_t d);

// Every point of eta Z^d inside the closed ball B(0, r). d <= 3 only.
std::vector<Point> enumerate_grid(double r, double eta, std::size_t d);

struct TransferReport {
  // Hypotheses.
  double gap = 0.0;        // |q - q'|
  double gap_limit = 0.0;  // diameter / n^3
  bool gap_ok = false;
  bool delta_ok = false;   // delta >= 1/n
  bool norm_ok = false;    // every |a| <= n
  bool hypotheses_met() const { return gap_ok && delta_ok && norm_ok; }

  GoodnessReport q_report;        // (c, delta) at q
  GoodnessReport q_prime_report;  // (c, 0) at q'
  // Premise and hypotheses hold but q' is not (c, 0)-good.
  bool counterexample = false;
};

TransferReport goodness_transfer_check(const Dataset& points, double diameter,
                                       std::span<const double> q,
                                       std::span<const double> q_prime,
                                       const ProjectionMatrix& matrix, double c, double delta,
                                       double t);

// Same, computing the diameter by brute force.
TransferReport goodness_transfer_check(const Dataset& points, std::span<const double> q,
                                       std::span<const double> q_prime,
                                       const ProjectionMatrix& matrix, double c, double delta,
                                       double t);

struct KHalfOptions {
  std::size_t k = 8;
  std::size_t trials = 200;
  std::size_t N = 1;
  double c = 2.0;
  double delta = 0.0;
  double t = 1.0;
};

struct KHalfReport {
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t queries = 0;
  std::size_t good = 0;      // (trial, query, matrix) triples that were good
  std::size_t failures = 0;  // (trial, query) pairs good for fewer than k/2 matrices
  double per_matrix_rate = 0.0;
  double failure_fraction = 0.0;
};

// For each trial draws k fresh norm-capped matrices and counts, per query,
// the matrices for which it is (c, delta)-good. Trial i uses
// stream.derive(i); results do not depend on the thread count.
KHalfReport k_half_concentration(const Dataset& points, const std::vector<Point>& queries,
                                 const KHalfOptions& options, RngStream stream);

// Fraction of trials in which m indices drawn with repetition from [0, k)
// all miss a fixed half of the indices.
double sampling_miss_rate(std::size_t k, std::size_t m, std::size_t trials, RngStream stream);

// Pr[Z >= x] for standard normal Z.
double gaussian_tail(double x);
// e^{-x^2/2} / x, valid for x > 0.
double gaussian_tail_upper(double x);
// x / (1 + x^2) phi(x), valid for x > 0.
double gaussian_tail_lower(double x);

struct TailEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

TailEstimate monte_carlo_tail(double x, std::size_t samples, Rng& rng);

}  // namespace afn

#endif  // AFN_VERIFY_H_
