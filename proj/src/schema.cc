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

#include "pec/schema.h"

#include <algorithm>
#include <charconv>
#include <utility>

#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace pec {

absl::string_view FieldKindName(FieldKind kind) {
  switch (kind) {
    case FieldKind::kPrefix:
      return "prefix";
    case FieldKind::kTbv:
      return "tbv";
    case FieldKind::kRange:
      return "range";
    case FieldKind::kDisjointRanges:
      return "disjoint_ranges";
    case FieldKind::kValueSet:
      return "set";
    case FieldKind::kOptional:
      return "optional";
  }
  return "unknown";
}

std::optional<FieldKind> ParseFieldKind(absl::string_view name) {
  for (FieldKind kind :
       {FieldKind::kPrefix, FieldKind::kTbv, FieldKind::kRange,
        FieldKind::kDisjointRanges, FieldKind::kValueSet,
        FieldKind::kOptional}) {
    if (FieldKindName(kind) == name) return kind;
  }
  if (name == "ip_prefix") return FieldKind::kPrefix;
  return std::nullopt;
}

ValueUniverse::ValueUniverse(uint64_t domain_size, std::vector<uint64_t> values)
    : domain_size_(domain_size), values_(std::move(values)) {}

std::optional<size_t> ValueUniverse::IndexOf(uint64_t value) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), value);
  if (it == values_.end() || *it != value) return std::nullopt;
  return static_cast<size_t>(it - values_.begin());
}

Field::Field(FieldDecl decl, std::shared_ptr<const ValueUniverse> universe)
    : decl_(std::move(decl)), universe_(std::move(universe)) {
  for (const auto& [name, value] : decl_.symbols) names_.emplace(value, name);
}

BigInt Field::DomainSize() const {
  switch (decl_.kind) {
    case FieldKind::kPrefix:
    case FieldKind::kTbv:
      return Pow2(decl_.width);
    case FieldKind::kRange:
    case FieldKind::kDisjointRanges:
    case FieldKind::kValueSet:
    case FieldKind::kOptional:
      return BigInt(decl_.bound);
  }
  return 0;
}

absl::StatusOr<uint64_t> ResolveValue(const FieldDecl& decl,
                                      absl::string_view text) {
  uint64_t value = 0;
  if (auto it = decl.symbols.find(text); it != decl.symbols.end()) {
    value = it->second;
  } else if (absl::StartsWith(text, "0x") || absl::StartsWith(text, "0X")) {
    absl::string_view digits = text.substr(2);
    auto [end, ec] = std::from_chars(digits.data(),
                                     digits.data() + digits.size(), value, 16);
    if (digits.empty() || ec != std::errc() ||
        end != digits.data() + digits.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("field '", decl.name, "': bad value '", text, "'"));
    }
  } else if (!absl::SimpleAtoi(text, &value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("field '", decl.name, "': unknown value '", text, "'"));
  }
  if ((decl.kind == FieldKind::kValueSet ||
       decl.kind == FieldKind::kOptional) &&
      value >= decl.bound) {
    return absl::OutOfRangeError(absl::StrCat("field '", decl.name,
                                              "': value ", value,
                                              " outside domain of size ",
                                              decl.bound));
  }
  return value;
}

std::string Field::ValueName(uint64_t value) const {
  if (auto it = names_.find(value); it != names_.end()) return it->second;
  return absl::StrCat(value);
}

Schema::Schema(std::vector<Field> fields) : fields_(std::move(fields)) {}

std::optional<size_t> Schema::FieldIndex(absl::string_view name) const {
  for (size_t i = 0; i < fields_.size(); ++i) {
    if (fields_[i].name() == name) return i;
  }
  return std::nullopt;
}

BigInt Schema::UniverseSize() const {
  BigInt size = 1;
  for (const Field& field : fields_) size *= field.DomainSize();
  return size;
}

absl::Status SchemaBuilder::AddField(FieldDecl decl) {
  if (decl.name.empty()) {
    return absl::InvalidArgumentError("field without a name");
  }
  if (FieldIndex(decl.name).has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("duplicate field '", decl.name, "'"));
  }
  switch (decl.kind) {
    case FieldKind::kPrefix:
      if (decl.width == 0 || decl.width > 128) {
        return absl::InvalidArgumentError(absl::StrCat(
            "field '", decl.name, "': prefix width must be in 1..128"));
      }
      break;
    case FieldKind::kTbv:
      if (decl.width == 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("field '", decl.name, "': tbv width must be >= 1"));
      }
      break;
    case FieldKind::kRange:
    case FieldKind::kDisjointRanges:
      if (decl.bound == 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("field '", decl.name, "': missing range bound"));
      }
      break;
    case FieldKind::kValueSet:
    case FieldKind::kOptional:
      if (decl.bound == 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("field '", decl.name, "': missing domain size"));
      }
      for (const auto& [symbol, value] : decl.symbols) {
        if (value >= decl.bound) {
          return absl::OutOfRangeError(
              absl::StrCat("field '", decl.name, "': symbol ", symbol,
                           " outside domain"));
        }
      }
      break;
  }
  decls_.push_back(std::move(decl));
  values_.emplace_back();
  return absl::OkStatus();
}

std::optional<size_t> SchemaBuilder::FieldIndex(absl::string_view name) const {
  for (size_t i = 0; i < decls_.size(); ++i) {
    if (decls_[i].name == name) return i;
  }
  return std::nullopt;
}

absl::Status SchemaBuilder::NoteValue(size_t field, uint64_t value) {
  if (field >= decls_.size()) {
    return absl::OutOfRangeError("no such field");
  }
  const FieldDecl& decl = decls_[field];
  if (decl.kind != FieldKind::kValueSet) return absl::OkStatus();
  if (value >= decl.bound) {
    return absl::OutOfRangeError(absl::StrCat(
        "field '", decl.name, "': value ", value, " outside domain"));
  }
  values_[field].push_back(value);
  return absl::OkStatus();
}

absl::StatusOr<std::shared_ptr<const Schema>> SchemaBuilder::Freeze() const {
  if (decls_.empty()) {
    return absl::InvalidArgumentError("schema declares no fields");
  }
  std::vector<Field> fields;
  fields.reserve(decls_.size());
  for (size_t i = 0; i < decls_.size(); ++i) {
    std::shared_ptr<const ValueUniverse> universe;
    if (decls_[i].kind == FieldKind::kValueSet) {
      std::vector<uint64_t> values = values_[i];
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      universe =
          std::make_shared<const ValueUniverse>(decls_[i].bound, values);
    }
    fields.emplace_back(decls_[i], std::move(universe));
  }
  return std::make_shared<const Schema>(std::move(fields));
}

}  // namespace pec
