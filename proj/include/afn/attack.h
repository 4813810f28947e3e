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

// White-box attack on the oblivious baseline. The dataset holds n/2 copies
// of p- = -1 and n/2 copies of p+ = +1. With v = a_1 / |a_1| and
// y = sgn(<a_1, p+ - p->), the query q = p- + x y v makes every copy of p-
// score x |a_1| against a_1, which crowds p+ out of the candidate slots.

#ifndef AFN_ATTACK_H_
#define AFN_ATTACK_H_

#include <cstddef>
#include <optional>
#include <span>

#include "afn/base_index.h"
#include "afn/dataset.h"
#include "afn/vector_ops.h"

namespace afn {

// n/2 copies of -1 (ids [0, n/2)) followed by n/2 copies of +1.
Dataset build_attack_dataset(std::size_t n, std::size_t d);

// The slot-flooding argument needs n/2 >= c_N N copies of p-.
bool attack_feasible(std::size_t n, std::size_t N, std::size_t c_N);

enum class AttackMode {
  kPaper,      // x = d^0.01
  kCertified,  // smallest x meeting the certificate on the realised vectors
};

const char* attack_mode_name(AttackMode mode);

struct AttackCertificate {
  bool norm_a1_ok = false;         // |a_1| > sqrt(d) / 2
  bool x_gt_half_inner = false;    // x > |<p+ - p-, v>| / 2
  bool a1_dominates_all = false;   // x |a_1| > max_{i>1} |<q - p+, a_i>|
  bool x_lt_sqrt_d = false;        // x < sqrt(d)
  bool n_ge_2cN_N = false;         // n >= 2 c_N N (false when n is unknown)

  bool certified() const { return x_gt_half_inner && a1_dominates_all && x_lt_sqrt_d; }
};

struct AttackInstance {
  Point p_minus;
  Point p_plus;
  Point v;  // a_1 / |a_1|
  int y = 1;
  double x = 0.0;
  Point q;  // p_minus + x y v
  AttackMode mode = AttackMode::kCertified;
  AttackCertificate certificate;
};

struct CraftOptions {
  AttackMode mode = AttackMode::kCertified;
  // Use this x instead of the mode's rule; the certificate is still evaluated.
  std::optional<double> x_override;
  // Dataset size and slot constant for the n >= 2 c_N N flag.
  std::size_t n = 0;
  std::size_t c_N = 0;
  // Near and far points; default to -1 and +1.
  std::optional<Point> p_minus;
  std::optional<Point> p_plus;
};

// Crafts q against vectors.vector(0). Certified mode doubles x from 1 up to
// 2 sqrt(d) until x > |<p+ - p-, v>| / 2 and x |a_1| beats every other
// projection, bisects down to the smallest such x inside the last doubling
// step, and throws AttackInfeasible unless that x is also below sqrt(d).
//
// With custom near/far points every length (the search range, paper mode's
// d^0.01 and the sqrt(d) bound) is scaled by |p+ - p-| / (2 sqrt(d)), which
// is 1 for the +-1 dataset.
AttackInstance craft_attack_query(const ProjectionMatrix& vectors,
                                  const CraftOptions& options = {});

// Evaluates the certificate of an (x, y, v) choice on the realised vectors.
AttackCertificate certify_attack(const ProjectionMatrix& vectors, std::span<const double> p_minus,
                                 std::span<const double> p_plus, std::span<const double> v, int y,
                                 double x);

struct AttackVerification {
  std::size_t d = 0;
  double norm_a1 = 0.0;
  double half_sqrt_d = 0.0;
  bool norm_a1_ok = false;            // |a_1| > sqrt(d)/2

  double dist_q_p_minus = 0.0;
  double dist_q_p_plus = 0.0;
  bool far_applicable = false;        // x < sqrt(d)
  bool far_holds = false;             // |q - p+| > sqrt(d)

  double inner_pm_v = 0.0;            // |<p+ - p-, v>|
  bool comparison_applicable = false; // x > inner_pm_v / 2
  double proj_q_p_plus_a1 = 0.0;      // |<q - p+, a_1>|
  double proj_q_p_minus_a1 = 0.0;     // |<q - p-, a_1>|
  bool comparison_holds = false;      // proj_q_p_plus_a1 < proj_q_p_minus_a1
  double x_norm_a1 = 0.0;
  bool identity_holds = false;        // |<q - p-, a_1>| = x |a_1| to 1e-9 relative

  bool inner_within_d001 = false;     // |<p+ - p-, v>| <= d^0.01
  double max_other_proj = 0.0;        // max_{i>1} |<q - p+, a_i>|
  double tail_t = 0.0;                // sqrt(6 ln N)
  double tail_threshold = 0.0;        // tail_t (2 sqrt(d) + x)
  bool tail_holds = false;            // max_other_proj <= tail_threshold

  bool p_plus_is_furthest = false;    // from the dataset, when p+ is one of its points
  double ratio = 0.0;                 // |q - p+| / |q - p-|
};

// Diagnostic checks of the attack's supporting facts on one instance.
AttackVerification verify_attack(const Dataset& points, const AttackInstance& instance,
                                 const ProjectionMatrix& vectors);

}  // namespace afn

#endif  // AFN_ATTACK_H_
