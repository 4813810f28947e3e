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

#ifndef AFN_BINARY_IO_H_
#define AFN_BINARY_IO_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace afn {

// Little-endian encoder over an ostream.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  void bytes(std::string_view raw);
  void u8(std::uint8_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);

 private:
  std::ostream& out_;
};

// Little-endian decoder that tracks its byte offset; short reads throw
// FormatError carrying the offset where the read started.
class BinaryReader {
 public:
  explicit BinaryReader(std::istream& in) : in_(in) {}

  std::string bytes(std::size_t len);
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();

  std::uint64_t offset() const { return offset_; }
  bool at_end();

 private:
  void read(char* dst, std::size_t len);

  std::istream& in_;
  std::uint64_t offset_ = 0;
};

}  // namespace afn

#endif  // AFN_BINARY_IO_H_
