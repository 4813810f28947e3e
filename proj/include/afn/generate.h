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

#ifndef AFN_GENERATE_H_
#define AFN_GENERATE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "afn/dataset.h"
#include "afn/rng.h"

namespace afn {

enum class DatasetKind {
  kGaussian,   // i.i.d. standard normal coordinates
  kClustered,  // two unit-variance blobs centred at -3 * 1 and +3 * 1
  kAttack,     // n/2 copies of -1 followed by n/2 copies of +1
  kFile,       // AFND or CSV file
};

struct DatasetSpec {
  DatasetKind kind = DatasetKind::kGaussian;
  std::string path;  // kFile only

  std::string to_string() const;
};

// "gaussian", "clustered", "attack" or "file:<path>".
DatasetSpec parse_dataset_spec(std::string_view text);

inline constexpr double kClusterOffset = 3.0;

// n and d are ignored for files. Deterministic in the stream.
Dataset gen_dataset(const DatasetSpec& spec, std::size_t n, std::size_t d, RngStream stream);

}  // namespace afn

#endif  // AFN_GENERATE_H_
