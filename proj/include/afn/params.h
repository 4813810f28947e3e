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

#ifndef AFN_PARAMS_H_
#define AFN_PARAMS_H_

#include <cstddef>
#include <optional>

namespace afn {

// Tunables of the robust index. The multiplicative constants stand in for
// asymptotic notation and are explicit so experiments can pin them.
struct Params {
  double c = 2.0;       // approximation factor, > 1
  double eps = 0.0;     // distance-oracle error
  double delta = 0.0;   // slack, in (0, 1/2]
  double t = 1.0;       // projection threshold, >= 1
  std::size_t N = 1;    // projections per base structure
  std::size_t k = 1;    // number of base structures
  std::size_t m = 1;    // bases sampled per query
  double const_N = 4.0;
  double const_k = 1.0;
  double const_m = 2.0;
  std::size_t c_N = 8;  // candidate constant of the oblivious baseline
  // Pairs taken from the heap merge per base; 0 means 8N + 1.
  std::size_t candidate_budget = 0;
  // Answer queries outside the trivial-query ball without touching the bases.
  bool shortcut = true;

  std::size_t candidates() const {
    return candidate_budget != 0 ? candidate_budget : 8 * N + 1;
  }

  // Throws ParamError when a field is outside its domain.
  void validate() const;

  friend bool operator==(const Params&, const Params&) = default;
};

struct ParamOverrides {
  std::optional<double> delta;
  std::optional<double> t;
  std::optional<std::size_t> N;
  std::optional<std::size_t> k;
  std::optional<std::size_t> m;
  std::optional<double> const_N;
  std::optional<double> const_k;
  std::optional<double> const_m;
  std::optional<std::size_t> c_N;
  std::optional<std::size_t> candidate_budget;
  std::optional<bool> shortcut;
};

// Root of exp(t^2 (1-delta)^2 / (2 (1+delta)^2)) / t = 2n on the branch
// t >= (1+delta)/(1-delta). Relative residual is below 1e-9.
// Requires n >= 1 and 0 <= delta < 1.
double solve_t(double n, double delta);

// Derives every field from (n, d, c, eps):
//   delta = 1/n,  t = solve_t(n, delta),
//   N = ceil(const_N * n^(1/c^2) * sqrt(ln n)),
//   k = ceil(const_k * d * ln(d n / (c - 1))),
//   m = ceil(const_m * log2 n).
// Any field may be overridden. A derived k smaller than m is raised to m.
Params derive_params(std::size_t n, std::size_t d, double c, double eps,
                     const ParamOverrides& overrides = {});

}  // namespace afn

#endif  // AFN_PARAMS_H_
