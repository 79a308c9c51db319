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

#ifndef PEC_BENCH_H_
#define PEC_BENCH_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "pec/oracle.h"

namespace pec {

// Synthetic workload: `count` random tbvs of `width` digits, each digit '*'
// with probability star_percent / 100.
struct BenchOptions {
  uint64_t seed = 7;
  uint32_t width = 128;
  uint32_t count = 3000;
  uint32_t star_percent = 75;
  // Also time the brute-force emptiness oracle, if the universe has at most
  // enum_cap headers.
  bool oracle = false;
  uint64_t enum_cap = kDefaultEnumerationCap;
};

struct BenchReport {
  BenchOptions options;
  uint64_t insertions = 0;
  // Distinct elements given to the lattice.
  uint64_t distinct = 0;
  uint64_t nodes = 0;
  uint64_t empty_pecs = 0;
  // Wall-clock seconds. The build inserts everything with deferred
  // recomputation; settle then computes every PEC cardinality, which decides
  // emptiness for all nodes at once.
  double build_seconds = 0;
  double settle_seconds = 0;
  std::optional<double> oracle_seconds;
  // Whether the oracle found exactly the same empty PECs.
  std::optional<bool> oracle_agrees;
};

// Fails with InvalidArgument on a zero width, or when the oracle is requested
// for a universe larger than enum_cap.
absl::StatusOr<BenchReport> RunBench(const BenchOptions& options);

}  // namespace pec

#endif  // PEC_BENCH_H_
