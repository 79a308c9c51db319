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

#ifndef PEC_ORACLE_H_
#define PEC_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pec/big_int.h"
#include "pec/element.h"
#include "pec/lattice.h"
#include "pec/query.h"
#include "pec/schema.h"

namespace pec {

// Brute-force ground truth over explicitly enumerated headers. Nothing here
// uses the element algebra's intersection or subset operations.

inline constexpr uint64_t kDefaultEnumerationCap = uint64_t{1} << 24;

// One concrete value per schema field. Prefix and tbv values are integers
// whose most significant bit is the first address bit / leftmost digit.
using Header = std::vector<uint128>;

// OK iff the schema has at most `cap` headers.
absl::Status CheckEnumerable(const Schema& schema,
                             uint64_t cap = kDefaultEnumerationCap);

// Calls `fn` for every header, in lexicographic field order.
absl::Status ForEachHeader(const Schema& schema,
                           const std::function<void(const Header&)>& fn,
                           uint64_t cap = kDefaultEnumerationCap);

bool ContainsHeader(const Element& elem, const Header& header);
bool EvaluateQuery(const Query& q, const Header& header);

// Containment signature (ascending indices of the elements that contain a
// header) -> number of headers with that signature. The empty signature is
// the class of headers outside every element.
using SignatureClasses = std::map<std::vector<uint32_t>, uint64_t>;

absl::StatusOr<SignatureClasses> ClassifyHeaders(
    const Schema& schema, const std::vector<Element>& elements,
    uint64_t cap = kDefaultEnumerationCap);

// Per node: whether no header lies in its element but outside all of its
// children's elements. Checks every node independently.
absl::StatusOr<std::vector<bool>> BruteForceEmptyPecs(
    const Lattice& lattice, uint64_t cap = kDefaultEnumerationCap);

// Per node: the exact number of headers whose deepest containing nodes
// include it, i.e. the PEC cardinality computed by enumeration.
absl::StatusOr<std::vector<uint64_t>> BruteForcePecSizes(
    const Lattice& lattice, uint64_t cap = kDefaultEnumerationCap);

// Some header of the PEC of `id`, if the universe is small enough to search.
std::optional<Header> SampleHeader(const Lattice& lattice, NodeId id,
                                   uint64_t cap = kDefaultEnumerationCap);
std::string FormatHeader(const Schema& schema, const Header& header);

// Disjunction of conjunctive clauses over variables 1..num_vars. Literal v > 0
// is x_v, v < 0 is the negation of x_{-v}.
struct DnfFormula {
  uint32_t num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

// One clause per line as signed variable indices ("1 3", "2 -3"). An optional
// "p dnf <vars> <clauses>" line fixes the variable count; otherwise it is the
// largest index used. A trailing 0 on a clause line is ignored. Lines starting
// with 'c' or '#' are comments.
absl::StatusOr<DnfFormula> ParseDnf(absl::string_view text);

// One tbv of width num_vars per satisfiable clause: '1' for x_v, '0' for its
// negation, '*' otherwise. Clauses containing x and not x are skipped and
// counted in `skipped`.
std::vector<Tbv> DnfToElements(const DnfFormula& f, size_t* skipped = nullptr);

// Both build a lattice over DnfToElements(f): the formula is a tautology iff
// the root PEC is empty, and has 2^n minus the root PEC cardinality models.
absl::StatusOr<bool> IsTautology(const DnfFormula& f);
absl::StatusOr<BigInt> CountDnfModels(const DnfFormula& f);

// Truth-table evaluation; bit (v - 1) of `assignment` is x_v.
bool EvaluateDnf(const DnfFormula& f, uint64_t assignment);
// Requires num_vars <= 24.
uint64_t TruthTableModels(const DnfFormula& f);

}  // namespace pec

#endif  // PEC_ORACLE_H_
