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

#ifndef PEC_ELEMENT_TEXT_H_
#define PEC_ELEMENT_TEXT_H_

#include <string>
#include "absl/strings/string_view.h"
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pec/element.h"
#include "pec/schema.h"

namespace pec {

// Field-value syntax shared by rule files, topologies and queries:
//
//   any kind          "*", "ANY" or "any" for the whole domain
//   prefix            "10.57.0.0/19" (32-bit fields), "<int>/<len>", "<int>"
//   tbv               "1*0*", exactly `width` digits
//   range             "[lo:hi)" or a single value "v"
//   disjoint_ranges   "{[lo:hi),...}", "[lo:hi)", "v", optionally negated "!"
//   set               "{v,...}", "v", optionally negated "!"
//   optional          "v"
//
// Values may be decimal, "0x" hex, or symbols declared for the field.
// Host bits of prefixes are cleared, so "171.64.79.160/24" reads as
// "171.64.79.0/24".

using FieldMap = std::vector<std::pair<std::string, std::string>>;

absl::StatusOr<Element> ParseFieldValue(const Field& field,
                                        absl::string_view text);

// Inverse of ParseFieldValue: ParseFieldValue(f, FormatFieldValue(f, e)) == e.
std::string FormatFieldValue(const Field& field, const Element& e);

// Builds a schema element from a field map; missing fields are wildcards.
absl::StatusOr<Element> ParseMatch(const Schema& schema, const FieldMap& map);

// Non-wildcard fields of `e` in schema order.
FieldMap FormatMatch(const Schema& schema, const Element& e);

// "dst=10.57.0.0/19 proto=!{UDP}", or "ANY" for the top element.
std::string FormatElement(const Schema& schema, const Element& e);

// First ingestion pass: records the explicit values a set-valued field text
// mentions. Texts of other field kinds are ignored.
absl::Status NoteFieldValues(SchemaBuilder& builder, size_t field,
                             absl::string_view text);
absl::Status NoteMatchValues(SchemaBuilder& builder, const FieldMap& map);

}  // namespace pec

#endif  // PEC_ELEMENT_TEXT_H_
