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

#include "afn/attack.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "afn/error.h"
#include "afn/exact.h"

namespace afn {

namespace {

constexpr double kMargin = 1e-9;

// |p+ - p-| / (2 sqrt(d)); 1 for the +-1 dataset.
double length_scale(std::span<const double> p_minus, std::span<const double> p_plus) {
  return distance(p_minus, p_plus) / (2.0 * std::sqrt(static_cast<double>(p_minus.size())));
}

Point make_query(std::span<const double> p_minus, std::span<const double> v, int y, double x) {
  Point q(p_minus.begin(), p_minus.end());
  for (std::size_t j = 0; j < q.size(); ++j) q[j] += x * y * v[j];
  return q;
}

Point minus(std::span<const double> a, std::span<const double> b) {
  Point out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
  return out;
}

}  // namespace

Dataset build_attack_dataset(std::size_t n, std::size_t d) {
  if (n < 2 || n % 2 != 0) throw InputError("attack dataset needs an even n >= 2");
  if (d == 0) throw InputError("attack dataset needs d >= 1");
  std::vector<double> coords(n * d, 1.0);
  std::fill(coords.begin(), coords.begin() + (n / 2) * d, -1.0);
  return Dataset(d, std::move(coords));
}

bool attack_feasible(std::size_t n, std::size_t N, std::size_t c_N) {
  return n >= 2 * c_N * N;
}

const char* attack_mode_name(AttackMode mode) {
  return mode == AttackMode::kPaper ? "paper" : "certified";
}

AttackCertificate certify_attack(const ProjectionMatrix& vectors, std::span<const double> p_minus,
                                 std::span<const double> p_plus, std::span<const double> v, int y,
                                 double x) {
  const std::size_t d = vectors.dim();
  const double scale = length_scale(p_minus, p_plus);
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  const double norm_a1 = norm(vectors.vector(0));
  const Point q = make_query(p_minus, v, y, x);
  const Point gap = minus(p_plus, p_minus);
  const Point q_plus = minus(q, p_plus);

  AttackCertificate cert;
  cert.norm_a1_ok = norm_a1 > 0.5 * sqrt_d;
  cert.x_gt_half_inner = x > 0.5 * std::abs(dot(gap, v)) * (1.0 + kMargin);
  double worst = 0.0;
  for (std::size_t i = 1; i < vectors.count(); ++i) {
    worst = std::max(worst, std::abs(dot(q_plus, vectors.vector(i))));
  }
  cert.a1_dominates_all = x * norm_a1 > worst * (1.0 + kMargin);
  cert.x_lt_sqrt_d = x < sqrt_d * scale;
  return cert;
}

AttackInstance craft_attack_query(const ProjectionMatrix& vectors, const CraftOptions& options) {
  const std::size_t d = vectors.dim();
  AttackInstance inst;
  inst.p_minus = options.p_minus.value_or(Point(d, -1.0));
  inst.p_plus = options.p_plus.value_or(Point(d, 1.0));
  check_dimension(inst.p_minus, d);
  check_dimension(inst.p_plus, d);
  const double scale = length_scale(inst.p_minus, inst.p_plus);
  if (!(scale > 0.0)) throw InputError("attack needs distinct near and far points");

  const auto a1 = vectors.vector(0);
  const double norm_a1 = norm(a1);
  if (!(norm_a1 > 0.0)) throw InputError("attack needs a nonzero first projection vector");
  inst.v.resize(d);
  for (std::size_t j = 0; j < d; ++j) inst.v[j] = a1[j] / norm_a1;
  // sgn(0) = +1.
  inst.y = dot(a1, minus(inst.p_plus, inst.p_minus)) < 0.0 ? -1 : 1;
  inst.mode = options.mode;

  auto cert_at = [&](double x) {
    return certify_attack(vectors, inst.p_minus, inst.p_plus, inst.v, inst.y, x);
  };

  const double sqrt_d = std::sqrt(static_cast<double>(d));
  if (options.x_override) {
    inst.x = *options.x_override;
  } else if (options.mode == AttackMode::kPaper) {
    inst.x = std::pow(static_cast<double>(d), 0.01) * scale;
  } else {
    // (i) and (ii) hold for every large enough x, (iii) for every small
    // enough one: find the smallest x meeting the first two, then check (iii).
    auto lower_ok = [&](double x) {
      const AttackCertificate c = cert_at(x);
      return c.x_gt_half_inner && c.a1_dominates_all;
    };
    const double upper = 2.0 * sqrt_d * scale;
    double lo = 0.0;
    double hi = scale;
    while (hi <= upper && !lower_ok(hi)) {
      lo = hi;
      hi *= 2.0;
    }
    if (hi <= upper && lo > 0.0) {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (lower_ok(mid) ? hi : lo) = mid;
      }
    }
    if (hi > upper || !cert_at(hi).certified()) {
      const Point gap = minus(inst.p_plus, inst.p_minus);
      std::ostringstream msg;
      msg << "no certified x in [" << scale << ", " << upper << "]: |a_1| = " << norm_a1
          << ", |<p+ - p-, v>| = " << std::abs(dot(gap, inst.v));
      if (hi <= upper) msg << ", smallest x meeting the projection bounds = " << hi;
      throw AttackInfeasible(msg.str());
    }
    inst.x = hi;
  }
  if (!(inst.x > 0.0) || !std::isfinite(inst.x)) throw ParamError("attack x must be positive");
  inst.q = make_query(inst.p_minus, inst.v, inst.y, inst.x);
  inst.certificate = cert_at(inst.x);
  inst.certificate.n_ge_2cN_N =
      options.n > 0 && options.c_N > 0 && attack_feasible(options.n, vectors.count(), options.c_N);
  return inst;
}

AttackVerification verify_attack(const Dataset& points, const AttackInstance& instance,
                                 const ProjectionMatrix& vectors) {
  const std::size_t d = vectors.dim();
  check_dimension(instance.q, d);
  if (points.dim() != d) throw InputError("verify_attack: dimension mismatch");
  const double scale = length_scale(instance.p_minus, instance.p_plus);
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  const auto a1 = vectors.vector(0);
  const double x = instance.x;

  AttackVerification r;
  r.d = d;
  r.norm_a1 = norm(a1);
  r.half_sqrt_d = 0.5 * sqrt_d;
  r.norm_a1_ok = r.norm_a1 > r.half_sqrt_d;

  r.dist_q_p_minus = distance(instance.q, instance.p_minus);
  r.dist_q_p_plus = distance(instance.q, instance.p_plus);
  r.far_applicable = x < sqrt_d * scale;
  r.far_holds = r.dist_q_p_plus > sqrt_d * scale;

  const Point gap = minus(instance.p_plus, instance.p_minus);
  const Point q_minus = minus(instance.q, instance.p_minus);
  const Point q_plus = minus(instance.q, instance.p_plus);
  r.inner_pm_v = std::abs(dot(gap, instance.v));
  r.comparison_applicable = x > 0.5 * r.inner_pm_v;
  r.proj_q_p_plus_a1 = std::abs(dot(q_plus, a1));
  r.proj_q_p_minus_a1 = std::abs(dot(q_minus, a1));
  r.comparison_holds = r.proj_q_p_plus_a1 < r.proj_q_p_minus_a1;
  r.x_norm_a1 = x * r.norm_a1;
  r.identity_holds = std::abs(r.proj_q_p_minus_a1 - r.x_norm_a1) <= kMargin * r.x_norm_a1;

  r.inner_within_d001 = r.inner_pm_v <= std::pow(static_cast<double>(d), 0.01) * scale;
  for (std::size_t i = 1; i < vectors.count(); ++i) {
    r.max_other_proj = std::max(r.max_other_proj, std::abs(dot(q_plus, vectors.vector(i))));
  }
  r.tail_t = std::sqrt(6.0 * std::log(static_cast<double>(vectors.count())));
  r.tail_threshold = r.tail_t * (2.0 * sqrt_d * scale + x);
  r.tail_holds = r.max_other_proj <= r.tail_threshold;

  const Neighbor truth = exact_furthest(points, instance.q);
  const auto far = points.point(truth.id);
  r.p_plus_is_furthest = std::equal(far.begin(), far.end(), instance.p_plus.begin());
  r.ratio = r.dist_q_p_minus > 0.0 ? r.dist_q_p_plus / r.dist_q_p_minus
                                   : std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace afn
