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

#include "afn/params.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "afn/error.h"

namespace afn {
namespace {

// log of the left-hand side minus log(2n). Increasing for t >= (1+d)/(1-d).
double log_residual(double t, double a, double log_2n) {
  return a * t * t - std::log(t) - log_2n;
}

std::size_t ceil_to_size(double v) {
  return static_cast<std::size_t>(std::max(1.0, std::ceil(v)));
}

}  // namespace

double solve_t(double n, double delta) {
  if (!(n >= 1.0)) throw ParamError("solve_t: n must be >= 1");
  if (!(delta >= 0.0 && delta < 1.0)) throw ParamError("solve_t: delta must be in [0, 1)");
  const double a = (1.0 - delta) * (1.0 - delta) / (2.0 * (1.0 + delta) * (1.0 + delta));
  const double log_2n = std::log(2.0 * n);

  // At the left end a t^2 = 1/2, so the left-hand side is sqrt(e)(1-d)/(1+d) < 2.
  double lo = (1.0 + delta) / (1.0 - delta);
  double hi = 2.0 * lo;
  while (log_residual(hi, a, log_2n) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (log_residual(mid, a, log_2n) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Return whichever bracket end sits closer to the root.
  return std::abs(log_residual(lo, a, log_2n)) < std::abs(log_residual(hi, a, log_2n)) ? lo
                                                                                        : hi;
}

void Params::validate() const {
  if (!(c > 1.0)) throw ParamError("c must be > 1, got " + std::to_string(c));
  if (!(eps >= 0.0)) throw ParamError("eps must be >= 0");
  if (!(delta > 0.0 && delta <= 0.5)) throw ParamError("delta must be in (0, 1/2]");
  if (!(t >= 1.0)) throw ParamError("t must be >= 1");
  if (N == 0) throw ParamError("N must be >= 1");
  if (m == 0) throw ParamError("m must be >= 1");
  if (k < m) throw ParamError("k must be >= m");
  if (!(const_N > 0.0 && const_k > 0.0 && const_m > 0.0)) {
    throw ParamError("multiplicative constants must be > 0");
  }
  if (c_N == 0) throw ParamError("c_N must be >= 1");
}

Params derive_params(std::size_t n, std::size_t d, double c, double eps,
                     const ParamOverrides& overrides) {
  if (n < 2) throw ParamError("derive_params: n must be >= 2");
  if (d < 1) throw ParamError("derive_params: d must be >= 1");
  if (!(c > 1.0)) throw ParamError("derive_params: c must be > 1, got " + std::to_string(c));

  Params p;
  p.c = c;
  p.eps = eps;
  p.const_N = overrides.const_N.value_or(p.const_N);
  p.const_k = overrides.const_k.value_or(p.const_k);
  p.const_m = overrides.const_m.value_or(p.const_m);
  p.c_N = overrides.c_N.value_or(p.c_N);
  p.candidate_budget = overrides.candidate_budget.value_or(0);
  p.shortcut = overrides.shortcut.value_or(true);

  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  p.delta = overrides.delta.value_or(1.0 / nd);
  p.t = overrides.t.value_or(solve_t(nd, p.delta));
  p.N = overrides.N.value_or(
      ceil_to_size(p.const_N * std::pow(nd, 1.0 / (c * c)) * std::sqrt(std::log(nd))));
  p.m = overrides.m.value_or(ceil_to_size(p.const_m * std::log2(nd)));
  if (overrides.k) {
    p.k = *overrides.k;
  } else {
    p.k = ceil_to_size(p.const_k * dd * std::log(dd * nd / (c - 1.0)));
    if (p.k < p.m) p.k = p.m;
  }
  p.validate();
  return p;
}

}  // namespace afn
