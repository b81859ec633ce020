// Copyright 2026 the bkcurv developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BKCURV_COMMON_HPP
#define BKCURV_COMMON_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bk {

using cplx = std::complex<double>;

// Error categories shared by the C++ core and the C binding.  Keep the
// numeric values stable: the C header mirrors them.
enum class ErrCode : int {
  Ok = 0,
  Parse = 1,         // malformed expression or scenario text
  Domain = 2,        // input outside the operation's domain (point not interior, b<=a, ...)
  Precondition = 3,  // structural precondition violated (A2 fails, family not product-flat, ...)
  Numeric = 4,       // iteration failed to converge, matrix not PD, cancellation guard hit
  Invalid = 5,       // bad argument (null handle, index out of range)
  Io = 6,            // file read/write failure
  Internal = 7,      // cross-check mismatch inside the library itself
};

struct Error : std::runtime_error {
  ErrCode code;
  // Byte offset into the offending source text for parse errors, npos otherwise.
  std::size_t offset;

  Error(ErrCode c, const std::string& msg, std::size_t off = std::string::npos)
      : std::runtime_error(msg), code(c), offset(off) {}
};

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

// FNV-1a over a byte string; used to stamp reports with a scenario digest.
std::uint64_t fnv1a64(const std::string& s);
std::string fnv1a64_hex(const std::string& s);

}  // namespace bk

#endif
