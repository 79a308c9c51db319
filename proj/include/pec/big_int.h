// Copyright 2026 The pec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PEC_BIG_INT_H_
#define PEC_BIG_INT_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pec {

// Exact header counts. Small values stay in inline storage, so the common
// case of counts below 2^128 never allocates.
using BigInt = boost::multiprecision::cpp_int;

using uint128 = unsigned __int128;

inline BigInt Pow2(unsigned exponent) {
  BigInt result = 1;
  result <<= exponent;
  return result;
}

inline BigInt FromUint128(uint128 value) {
  BigInt result = static_cast<uint64_t>(value >> 64);
  result <<= 64;
  result += static_cast<uint64_t>(value);
  return result;
}

inline std::string ToString(const BigInt& value) { return value.str(); }

// Returns the value if it fits into 64 bits.
inline std::optional<uint64_t> ToUint64(const BigInt& value) {
  if (value < 0 || value > std::numeric_limits<uint64_t>::max()) {
    return std::nullopt;
  }
  return static_cast<uint64_t>(value);
}

}  // namespace pec

#endif  // PEC_BIG_INT_H_
