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

#ifndef PEC_QUERY_H_
#define PEC_QUERY_H_

#include <memory>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pec/element.h"
#include "pec/element_text.h"
#include "pec/lattice.h"
#include "pec/schema.h"

namespace pec {

// Boolean combination of elements.
class Query {
 public:
  enum class Kind { kAtom, kNot, kAnd, kOr };

  static Query Atom(Element elem);
  static Query Not(Query operand);
  static Query And(Query lhs, Query rhs);
  static Query Or(Query lhs, Query rhs);

  Kind kind() const;
  // Only for kAtom.
  const Element& element() const;
  // Operand of kNot, left operand of kAnd and kOr.
  const Query& lhs() const;
  const Query& rhs() const;

  // Atom elements in left-to-right order, duplicates included.
  std::vector<Element> Atoms() const;

 private:
  struct Node;
  explicit Query(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Query text before names and literals are resolved against a schema:
//
//   query   := or
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '!' unary | '(' query ')' | atom
//   atom    := 'top' | identifier | '{' field '=' value (',' field '=' value)* '}'
//
// Identifiers name elements, e.g. rule names. Literal values use the field
// value syntax of element_text.h.
struct QueryExpr {
  enum class Kind { kTop, kName, kLiteral, kNot, kAnd, kOr };
  Kind kind = Kind::kTop;
  std::string name;
  FieldMap literal;
  std::vector<QueryExpr> operands;
};

absl::StatusOr<QueryExpr> ParseQueryText(absl::string_view text);

// Records the set-field values mentioned by the literals of `expr`.
absl::Status NoteQueryValues(SchemaBuilder& builder, const QueryExpr& expr);

using NamedElements = absl::flat_hash_map<std::string, Element>;

absl::StatusOr<Query> BindQuery(const QueryExpr& expr, const Schema& schema,
                                const NamedElements& names);

// Sorted, duplicate-free node ids.
using PecSet = std::vector<NodeId>;

PecSet Union(const PecSet& a, const PecSet& b);
PecSet Intersection(const PecSet& a, const PecSet& b);
PecSet Difference(const PecSet& a, const PecSet& b);

// Inserts every atom of `q` that has no node yet. Leaves an amortized lattice
// unsettled.
absl::Status Prepare(Lattice& lattice, const Query& q);

// Read-only on a settled lattice. Empty PECs are kept.
absl::StatusOr<PecSet> ConvertToPecs(const Lattice& lattice, const Query& q);

// Drops the PECs whose cardinality is zero.
absl::StatusOr<PecSet> NonEmpty(const Lattice& lattice, const PecSet& s);

}  // namespace pec

#endif  // PEC_QUERY_H_
