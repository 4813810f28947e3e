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

// Dataset files.
//
// AFND v1, little-endian: "AFND" u32 version=1 u64 n u64 d, then n*d f64
// coordinates row-major. CSV input is also accepted: one point per line,
// comma-separated decimals; blank lines and lines starting with '#' are
// skipped.

#ifndef AFN_DATASET_IO_H_
#define AFN_DATASET_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "afn/dataset.h"

namespace afn {

inline constexpr std::uint32_t kDatasetFormatVersion = 1;

void write_dataset(const Dataset& points, std::ostream& out);
Dataset read_dataset(std::istream& in);
Dataset read_csv(std::istream& in);

void save_dataset(const Dataset& points, const std::string& path);
// Picks the format from the first four bytes: AFND magic or CSV text.
Dataset load_dataset(const std::string& path);

}  // namespace afn

#endif  // AFN_DATASET_IO_H_
