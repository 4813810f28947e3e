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

#include "afn/index_io.h"

#include <fstream>
#include <sstream>

#include "afn/binary_io.h"
#include "afn/error.h"

namespace afn {
namespace {

constexpr std::string_view kMagic = "AFNI";

void write_section(BinaryWriter& w, std::string_view tag, const std::string& payload) {
  w.bytes(tag);
  w.u64(payload.size());
  w.bytes(payload);
}

std::string params_payload(const Params& p, std::uint64_t master_seed) {
  std::ostringstream s;
  BinaryWriter w(s);
  w.f64(p.c);
  w.f64(p.eps);
  w.f64(p.delta);
  w.f64(p.t);
  w.u64(p.N);
  w.u64(p.k);
  w.u64(p.m);
  w.f64(p.const_N);
  w.f64(p.const_k);
  w.f64(p.const_m);
  w.u64(p.c_N);
  w.u64(p.candidate_budget);
  w.u8(p.shortcut ? 1 : 0);
  w.u64(master_seed);
  return s.str();
}

std::string stats_payload(const DatasetStats& st) {
  std::ostringstream s;
  BinaryWriter w(s);
  w.u64(st.center.size());
  w.f64(st.box_width);
  for (double v : st.center) w.f64(v);
  w.f64(st.diameter);
  w.f64(st.radius);
  return s.str();
}

std::string base_payload(const BaseIndex& base) {
  std::ostringstream s;
  BinaryWriter w(s);
  const ProjectionMatrix& m = base.matrix();
  w.u64(m.count());
  w.u64(m.dim());
  w.u64(base.candidate_budget());
  for (double v : m.data()) w.f64(v);
  for (const ProjectionList& list : base.lists()) {
    w.u64(list.size());
    for (const ProjectionEntry& e : list) {
      w.u32(e.id);
      w.f64(e.value);
    }
  }
  return s.str();
}

// Section header; the payload is parsed in place from the same reader so
// that error offsets refer to the file.
struct Section {
  std::string tag;
  std::uint64_t length = 0;
  std::uint64_t start = 0;
};

Section next_section(BinaryReader& r) {
  Section s;
  s.tag = r.bytes(4);
  s.length = r.u64();
  s.start = r.offset();
  return s;
}

void expect_tag(const Section& s, std::string_view tag) {
  if (s.tag != tag) {
    throw FormatError("expected section '" + std::string(tag) + "', found '" + s.tag + "'",
                      s.start - 12);
  }
}

void expect_consumed(const BinaryReader& r, const Section& s) {
  if (r.offset() != s.start + s.length) {
    throw FormatError("section '" + s.tag + "' length does not match its contents", s.start);
  }
}

}  // namespace

void write_index(const RobustIndex& index, std::ostream& out) {
  BinaryWriter w(out);
  w.bytes(kMagic);
  w.u32(kIndexFormatVersion);

  std::ostringstream dset;
  BinaryWriter dw(dset);
  dw.u64(index.dataset().size());
  dw.u64(index.dataset().dim());
  dw.u64(index.dataset().fingerprint());
  write_section(w, "DSET", dset.str());
  write_section(w, "PARM", params_payload(index.params(), index.master_seed()));
  write_section(w, "STAT", stats_payload(index.stats()));
  for (const BaseIndex& base : index.bases()) write_section(w, "BASE", base_payload(base));
  write_section(w, "END ", "");
  if (!out) throw Error("write_index: stream write failed");
}

RobustIndex read_index(std::istream& in, std::shared_ptr<const Dataset> points) {
  if (!points) throw InputError("read_index: null dataset");
  BinaryReader r(in);
  if (r.bytes(4) != kMagic) throw FormatError("not an AFNI file (bad magic)", 0);
  const std::uint32_t version = r.u32();
  if (version != kIndexFormatVersion) {
    throw FormatError("unsupported AFNI version " + std::to_string(version), 4);
  }

  Section s = next_section(r);
  expect_tag(s, "DSET");
  const std::uint64_t n = r.u64();
  const std::uint64_t d = r.u64();
  const std::uint64_t fingerprint = r.u64();
  expect_consumed(r, s);
  if (n != points->size() || d != points->dim() || fingerprint != points->fingerprint()) {
    throw InputError("index was built from a different dataset");
  }

  s = next_section(r);
  expect_tag(s, "PARM");
  Params p;
  p.c = r.f64();
  p.eps = r.f64();
  p.delta = r.f64();
  p.t = r.f64();
  p.N = r.u64();
  p.k = r.u64();
  p.m = r.u64();
  p.const_N = r.f64();
  p.const_k = r.f64();
  p.const_m = r.f64();
  p.c_N = r.u64();
  p.candidate_budget = r.u64();
  p.shortcut = r.u8() != 0;
  const std::uint64_t master_seed = r.u64();
  expect_consumed(r, s);
  try {
    p.validate();
  } catch (const ParamError& e) {
    throw FormatError(std::string("invalid parameters: ") + e.what(), s.start);
  }

  s = next_section(r);
  expect_tag(s, "STAT");
  DatasetStats st;
  const std::uint64_t stat_dim = r.u64();
  if (stat_dim != d) throw FormatError("statistics dimension mismatch", s.start);
  st.box_width = r.f64();
  st.center.resize(stat_dim);
  for (double& v : st.center) v = r.f64();
  st.diameter = r.f64();
  st.radius = r.f64();
  expect_consumed(r, s);

  std::vector<BaseIndex> bases;
  bases.reserve(p.k);
  for (std::size_t b = 0; b < p.k; ++b) {
    s = next_section(r);
    expect_tag(s, "BASE");
    const std::uint64_t count = r.u64();
    const std::uint64_t dim = r.u64();
    const std::uint64_t budget = r.u64();
    if (count != p.N || dim != d) throw FormatError("base shape mismatch", s.start);
    if (s.length < 24 + count * dim * 8) throw FormatError("base section too short", s.start);
    std::vector<double> rows(count * dim);
    for (double& v : rows) v = r.f64();
    std::vector<ProjectionList> lists(count);
    for (auto& list : lists) {
      const std::uint64_t at = r.offset();
      const std::uint64_t len = r.u64();
      if (len == 0 || len > n) throw FormatError("invalid list length", at);
      list.resize(len);
      for (auto& e : list) {
        const std::uint64_t entry_at = r.offset();
        e.id = r.u32();
        e.value = r.f64();
        if (e.id >= n) throw FormatError("point id out of range", entry_at);
      }
    }
    expect_consumed(r, s);
    bases.emplace_back(ProjectionMatrix(dim, std::move(rows)), std::move(lists), budget);
  }

  s = next_section(r);
  expect_tag(s, "END ");
  if (s.length != 0) throw FormatError("END section must be empty", s.start);
  return RobustIndex(std::move(points), p, std::move(st), master_seed, std::move(bases));
}

void save_index(const RobustIndex& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  write_index(index, out);
}

RobustIndex load_index(const std::string& path, std::shared_ptr<const Dataset> points) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_index(in, std::move(points));
}

}  // namespace afn
