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

#include "pec/bench.h"

#include <chrono>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pec/lattice.h"
#include "pec/random.h"
#include "spdlog/spdlog.h"

namespace pec {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

absl::StatusOr<BenchReport> RunBench(const BenchOptions& options) {
  if (options.width == 0) {
    return absl::InvalidArgumentError("width must be positive");
  }
  SchemaBuilder builder;
  if (absl::Status s =
          builder.AddField({"bits", FieldKind::kTbv, options.width, 0, {}});
      !s.ok()) {
    return s;
  }
  absl::StatusOr<std::shared_ptr<const Schema>> schema = builder.Freeze();
  if (!schema.ok()) return schema.status();
  if (options.oracle) {
    if (absl::Status s = CheckEnumerable(**schema, options.enum_cap); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("oracle: ", s.message()));
    }
  }

  Rng rng(options.seed);
  std::vector<Element> elements;
  absl::flat_hash_set<Element> seen;
  for (uint32_t i = 0; i < options.count; ++i) {
    Element e(RandomTbv(rng, options.width, options.star_percent));
    if (seen.insert(e).second) elements.push_back(std::move(e));
  }

  BenchReport report;
  report.options = options;
  report.distinct = elements.size();
  Lattice lattice(*schema, Lattice::Mode::kAmortized);
  Clock::time_point start = Clock::now();
  for (const Element& e : elements) {
    if (absl::StatusOr<NodeId> id = lattice.Insert(e); !id.ok()) {
      return id.status();
    }
  }
  report.build_seconds = SecondsSince(start);
  spdlog::debug("bench: inserted {} elements, {} nodes", elements.size(),
               lattice.size());

  start = Clock::now();
  lattice.Settle();
  std::vector<bool> empty(lattice.size());
  for (NodeId id = 0; id < lattice.size(); ++id) {
    empty[id] = lattice.node(id).cardinality == 0;
    report.empty_pecs += empty[id];
  }
  report.settle_seconds = SecondsSince(start);
  report.insertions = lattice.insertions();
  report.nodes = lattice.size();

  if (options.oracle) {
    start = Clock::now();
    absl::StatusOr<std::vector<bool>> brute =
        BruteForceEmptyPecs(lattice, options.enum_cap);
    report.oracle_seconds = SecondsSince(start);
    if (!brute.ok()) return brute.status();
    report.oracle_agrees = *brute == empty;
  }
  return report;
}

}  // namespace pec
