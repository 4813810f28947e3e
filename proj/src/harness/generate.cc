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

#include "afn/generate.h"

#include "afn/attack.h"
#include "afn/dataset_io.h"
#include "afn/error.h"

namespace afn {

std::string DatasetSpec::to_string() const {
  switch (kind) {
    case DatasetKind::kGaussian:
      return "gaussian";
    case DatasetKind::kClustered:
      return "clustered";
    case DatasetKind::kAttack:
      return "attack";
    case DatasetKind::kFile:
      return "file:" + path;
  }
  return "unknown";
}

DatasetSpec parse_dataset_spec(std::string_view text) {
  if (text == "gaussian") return {DatasetKind::kGaussian, {}};
  if (text == "clustered") return {DatasetKind::kClustered, {}};
  if (text == "attack") return {DatasetKind::kAttack, {}};
  if (text.starts_with("file:") && text.size() > 5) {
    return {DatasetKind::kFile, std::string(text.substr(5))};
  }
  throw InputError("unknown dataset kind '" + std::string(text) +
                   "' (expected gaussian, clustered, attack or file:<path>)");
}

Dataset gen_dataset(const DatasetSpec& spec, std::size_t n, std::size_t d, RngStream stream) {
  if (spec.kind == DatasetKind::kFile) return load_dataset(spec.path);
  if (spec.kind == DatasetKind::kAttack) return build_attack_dataset(n, d);
  if (n == 0 || d == 0) throw InputError("dataset needs n >= 1 and d >= 1");

  Rng rng(stream);
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    double shift = 0.0;
    if (spec.kind == DatasetKind::kClustered) {
      shift = rng.uniform() < 0.5 ? -kClusterOffset : kClusterOffset;
    }
    for (std::size_t j = 0; j < d; ++j) coords[i * d + j] = shift + rng.normal();
  }
  return Dataset(d, std::move(coords));
}

}  // namespace afn
