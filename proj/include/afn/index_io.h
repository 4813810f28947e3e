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

// AFNI v1 index files. All integers and floats are little-endian.
//
//   "AFNI" u32 version=1
//   section*  := tag[4] u64 payload_bytes payload
//     "DSET": u64 n, u64 d, u64 dataset fingerprint
//     "PARM": f64 c, eps, delta, t; u64 N, k, m; f64 const_N, const_k,
//             const_m; u64 c_N, candidate_budget; u8 shortcut;
//             u64 master_seed
//     "STAT": u64 d, f64 box_width, f64 center[d], f64 diameter, f64 radius
//     "BASE" (k times, in base order): u64 N, u64 d, u64 candidate_budget,
//             f64 matrix[N*d] row-major, then per list: u64 len,
//             len * (u32 id, f64 value)
//     "END " with empty payload
//
// The dataset itself is stored separately (see the AFND format); loading
// checks the fingerprint.

#ifndef AFN_INDEX_IO_H_
#define AFN_INDEX_IO_H_

#include <istream>
#include <memory>
#include <ostream>
#include <string>

#include "afn/robust_index.h"

namespace afn {

inline constexpr std::uint32_t kIndexFormatVersion = 1;

void write_index(const RobustIndex& index, std::ostream& out);
RobustIndex read_index(std::istream& in, std::shared_ptr<const Dataset> points);

void save_index(const RobustIndex& index, const std::string& path);
RobustIndex load_index(const std::string& path, std::shared_ptr<const Dataset> points);

}  // namespace afn

#endif  // AFN_INDEX_IO_H_
