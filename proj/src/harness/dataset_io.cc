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

#include "afn/dataset_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "afn/binary_io.h"
#include "afn/error.h"

namespace afn {

namespace {

constexpr char kMagic[] = "AFND";

}  // namespace

void write_dataset(const Dataset& points, std::ostream& out) {
  BinaryWriter w(out);
  w.bytes(kMagic);
  w.u32(kDatasetFormatVersion);
  w.u64(points.size());
  w.u64(points.dim());
  for (double v : points.coords()) w.f64(v);
  if (!out) throw Error("failed to write dataset");
}

Dataset read_dataset(std::istream& in) {
  BinaryReader r(in);
  if (r.bytes(4) != kMagic) throw FormatError("not an AFND file", 0);
  const std::uint64_t version_at = r.offset();
  if (r.u32() != kDatasetFormatVersion) throw FormatError("unsupported AFND version", version_at);
  const std::uint64_t shape_at = r.offset();
  const std::uint64_t n = r.u64();
  if (n == 0) throw FormatError("AFND header has n = 0", shape_at);
  const std::uint64_t d = r.u64();
  if (d == 0) throw FormatError("AFND header has d = 0", shape_at + 8);
  if (n > std::numeric_limits<std::uint64_t>::max() / 8 / d) {
    throw FormatError("AFND header size overflows", shape_at);
  }
  std::vector<double> coords;
  coords.reserve(std::min<std::uint64_t>(n * d, std::uint64_t{1} << 24));
  for (std::uint64_t i = 0; i < n * d; ++i) {
    const std::uint64_t at = r.offset();
    const double v = r.f64();
    if (!std::isfinite(v)) throw FormatError("non-finite coordinate", at);
    coords.push_back(v);
  }
  if (!r.at_end()) throw FormatError("trailing bytes after AFND payload", r.offset());
  return Dataset(d, std::move(coords));
}

Dataset read_csv(std::istream& in) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::uint64_t offset = 0;
  std::string line;
  while (std::getline(in, line)) {
    const std::uint64_t line_at = offset;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::size_t count = 0;
    std::size_t pos = 0;
    while (true) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      std::size_t b = pos;
      std::size_t e = end;
      while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
      while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t')) --e;
      if (b < e && line[b] == '+') ++b;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e, v);
      if (b == e || ec != std::errc() || ptr != line.data() + e || !std::isfinite(v)) {
        throw FormatError("bad CSV number '" + line.substr(pos, end - pos) + "'", line_at + pos);
      }
      coords.push_back(v);
      ++count;
      if (end == line.size()) break;
      pos = end + 1;
    }
    if (dim == 0) {
      dim = count;
    } else if (count != dim) {
      throw FormatError("CSV row has " + std::to_string(count) + " values, expected " +
                            std::to_string(dim),
                        line_at);
    }
  }
  if (dim == 0) throw FormatError("CSV file has no points", offset);
  return Dataset(dim, std::move(coords));
}

void save_dataset(const Dataset& points, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  write_dataset(points, out);
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  char head[4] = {};
  in.read(head, 4);
  const bool binary = in.gcount() == 4 && std::string_view(head, 4) == kMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_dataset(in) : read_csv(in);
}

}  // namespace afn
