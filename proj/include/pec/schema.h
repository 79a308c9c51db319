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

#ifndef PEC_SCHEMA_H_
#define PEC_SCHEMA_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pec/big_int.h"

namespace pec {

// The element type a header field is matched with.
enum class FieldKind {
  kPrefix,          // ip_prefix over a `width`-bit address
  kTbv,             // ternary bit vector of `width` digits
  kRange,           // one half-closed interval [lo:hi) within [0:bound)
  kDisjointRanges,  // set of disjoint intervals within [0:bound)
  kValueSet,        // finite set of values from a domain of `bound` values
  kOptional,        // wildcard or exactly one value from `bound` values
};

absl::string_view FieldKindName(FieldKind kind);
std::optional<FieldKind> ParseFieldKind(absl::string_view name);

// Bit layout of a value-set field. Every value mentioned explicitly anywhere in
// the input gets its own bit, in sorted value order; one extra "other" bit
// stands for all remaining values of the domain when there are any.
class ValueUniverse {
 public:
  // `values` must be sorted, unique and smaller than `domain_size`.
  ValueUniverse(uint64_t domain_size, std::vector<uint64_t> values);

  uint64_t domain_size() const { return domain_size_; }
  size_t explicit_count() const { return values_.size(); }
  bool has_other() const { return domain_size_ > values_.size(); }
  size_t bit_count() const { return values_.size() + (has_other() ? 1 : 0); }
  // Index of the "other" bit; only meaningful when has_other().
  size_t other_bit() const { return values_.size(); }
  uint64_t other_count() const { return domain_size_ - values_.size(); }

  std::optional<size_t> IndexOf(uint64_t value) const;
  uint64_t ValueAt(size_t index) const { return values_[index]; }
  const std::vector<uint64_t>& values() const { return values_; }

  bool operator==(const ValueUniverse& other) const {
    return domain_size_ == other.domain_size_ && values_ == other.values_;
  }

 private:
  uint64_t domain_size_;
  std::vector<uint64_t> values_;
};

struct FieldDecl {
  std::string name;
  FieldKind kind = FieldKind::kPrefix;
  // Address or vector width, for kPrefix and kTbv.
  uint32_t width = 0;
  // Exclusive upper bound of values for kRange and kDisjointRanges; domain
  // size for kValueSet and kOptional.
  uint64_t bound = 0;
  // Optional symbolic names for values (e.g. "UDP" -> 17).
  std::map<std::string, uint64_t, std::less<>> symbols;
};

// Resolves a symbol or a decimal/hex literal to a value of the field's
// domain. Set and optional values must be below the domain size.
absl::StatusOr<uint64_t> ResolveValue(const FieldDecl& decl,
                                      absl::string_view text);

class Field {
 public:
  Field(FieldDecl decl, std::shared_ptr<const ValueUniverse> universe);

  const std::string& name() const { return decl_.name; }
  FieldKind kind() const { return decl_.kind; }
  uint32_t width() const { return decl_.width; }
  uint64_t bound() const { return decl_.bound; }
  const FieldDecl& decl() const { return decl_; }
  // Non-null exactly for kValueSet fields.
  const std::shared_ptr<const ValueUniverse>& universe() const {
    return universe_;
  }

  // Number of distinct header values of this field.
  BigInt DomainSize() const;

  // Resolves a symbol or a decimal/hex literal to a value of the domain.
  absl::StatusOr<uint64_t> ResolveValue(absl::string_view text) const {
    return pec::ResolveValue(decl_, text);
  }
  // Symbolic name of `value` if one is declared, else its decimal form.
  std::string ValueName(uint64_t value) const;

 private:
  FieldDecl decl_;
  std::shared_ptr<const ValueUniverse> universe_;
  std::map<uint64_t, std::string> names_;
};

// Frozen header layout. Every element used with a lattice is validated
// against exactly one schema.
class Schema {
 public:
  explicit Schema(std::vector<Field> fields);

  const std::vector<Field>& fields() const { return fields_; }
  const Field& field(size_t index) const { return fields_[index]; }
  size_t size() const { return fields_.size(); }
  // Single-field schemas use bare elements; all others use tuples.
  bool is_tuple() const { return fields_.size() != 1; }
  std::optional<size_t> FieldIndex(absl::string_view name) const;

  // Number of distinct packet headers.
  BigInt UniverseSize() const;

 private:
  std::vector<Field> fields_;
};

// Collects field declarations and, for value-set fields, every value the
// input mentions. Freezing fixes the bit layouts; nothing can be added after.
class SchemaBuilder {
 public:
  absl::Status AddField(FieldDecl decl);
  const std::vector<FieldDecl>& decls() const { return decls_; }
  std::optional<size_t> FieldIndex(absl::string_view name) const;

  // Records an explicitly used value of a value-set field. Values of other
  // field kinds are ignored.
  absl::Status NoteValue(size_t field, uint64_t value);

  absl::StatusOr<std::shared_ptr<const Schema>> Freeze() const;

 private:
  std::vector<FieldDecl> decls_;
  std::vector<std::vector<uint64_t>> values_;
};

}  // namespace pec

#endif  // PEC_SCHEMA_H_
