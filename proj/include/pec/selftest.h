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

#ifndef PEC_SELFTEST_H_
#define PEC_SELFTEST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pec/oracle.h"

namespace pec {

struct SelftestOptions {
  uint64_t seed = 1;
  // Tbv width of the random instances; at most 16 so that every header can
  // be enumerated.
  uint32_t width = 8;
  uint32_t rule_count = 20;
  uint32_t iterations = 100;
  uint64_t enum_cap = kDefaultEnumerationCap;
};

struct SelftestFailure {
  std::string suite;
  // Seed of the failing instance; rerunning with this seed and one iteration
  // reproduces it.
  uint64_t seed = 0;
  std::string detail;
};

struct SelftestReport {
  uint32_t iterations = 0;
  std::vector<std::string> suites;
  std::optional<SelftestFailure> failure;
};

inline constexpr uint32_t kMaxSelftestWidth = 16;

// Iteration i uses seed + i and runs, in order: partition (lattice PECs
// against containment-signature classes of enumerated headers), conservation,
// order invariance, amortized against eager, and the DNF oracles. Stops at
// the first failure. Fails with InvalidArgument on a width of 0 or above
// kMaxSelftestWidth, or zero rules.
absl::StatusOr<SelftestReport> RunSelftest(const SelftestOptions& options);

}  // namespace pec

#endif  // PEC_SELFTEST_H_
