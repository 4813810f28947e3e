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

#ifndef AFN_ERROR_H_
#define AFN_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace afn {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data: non-finite coordinates, dimension mismatch, empty sets.
class InputError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its valid domain (c <= 1, N = 0, ...).
class ParamError : public Error {
 public:
  using Error::Error;
};

// Binary or text file that does not follow its declared format.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

// No query offset in the searched range satisfies the attack certificate.
class AttackInfeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace afn

#endif  // AFN_ERROR_H_
