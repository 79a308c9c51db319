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

#include "pec/element_text.h"

#include <optional>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace pec {
namespace {

bool IsWildcardText(absl::string_view text) {
  return text == "*" || text == "ANY" || text == "any";
}

absl::Status FieldError(const Field& field, absl::string_view text,
                        absl::string_view why) {
  return absl::InvalidArgumentError(absl::StrCat(
      "field '", field.name(), "': cannot parse '", text, "': ", why));
}

std::optional<uint128> ParseUint128(absl::string_view text) {
  if (text.empty()) return std::nullopt;
  unsigned base = 10;
  if (absl::ConsumePrefix(&text, "0x") || absl::ConsumePrefix(&text, "0X")) {
    base = 16;
    if (text.empty()) return std::nullopt;
  }
  uint128 value = 0;
  const uint128 limit = ~uint128{0};
  for (char c : text) {
    unsigned digit;
    if (c >= '0' && c <= '9') {
      digit = static_cast<unsigned>(c - '0');
    } else if (base == 16 && c >= 'a' && c <= 'f') {
      digit = static_cast<unsigned>(c - 'a' + 10);
    } else if (base == 16 && c >= 'A' && c <= 'F') {
      digit = static_cast<unsigned>(c - 'A' + 10);
    } else {
      return std::nullopt;
    }
    if (digit >= base || value > (limit - digit) / base) return std::nullopt;
    value = value * base + digit;
  }
  return value;
}

std::optional<uint32_t> ParseDottedQuad(absl::string_view text) {
  std::vector<absl::string_view> parts = absl::StrSplit(text, '.');
  if (parts.size() != 4) return std::nullopt;
  uint32_t address = 0;
  for (absl::string_view part : parts) {
    uint32_t octet = 0;
    if (part.empty() || !absl::SimpleAtoi(part, &octet) || octet > 255) {
      return std::nullopt;
    }
    address = (address << 8) | octet;
  }
  return address;
}

absl::StatusOr<Element> ParsePrefix(const Field& field, absl::string_view text) {
  absl::string_view address_text = text;
  std::optional<uint32_t> length;
  if (size_t slash = text.find('/'); slash != absl::string_view::npos) {
    address_text = text.substr(0, slash);
    uint32_t len = 0;
    if (!absl::SimpleAtoi(text.substr(slash + 1), &len)) {
      return FieldError(field, text, "bad prefix length");
    }
    length = len;
  }
  if (length.value_or(0) > field.width()) {
    return FieldError(field, text, "prefix length exceeds field width");
  }
  uint128 address = 0;
  if (absl::StrContains(address_text, '.')) {
    if (field.width() != 32) {
      return FieldError(field, text, "dotted addresses need a 32-bit field");
    }
    std::optional<uint32_t> quad = ParseDottedQuad(address_text);
    if (!quad.has_value()) return FieldError(field, text, "bad IPv4 address");
    address = *quad;
  } else {
    std::optional<uint128> parsed = ParseUint128(address_text);
    if (!parsed.has_value()) return FieldError(field, text, "bad address");
    address = *parsed;
  }
  if (field.width() < 128 && (address >> field.width()) != 0) {
    return absl::OutOfRangeError(absl::StrCat(
        "field '", field.name(), "': address in '", text,
        "' does not fit into ", field.width(), " bits"));
  }
  return Element(IpPrefix(address, length.value_or(field.width()),
                          field.width()));
}

absl::StatusOr<uint64_t> ParseBoundedNumber(const Field& field,
                                            absl::string_view text,
                                            uint64_t max_inclusive) {
  absl::StatusOr<uint64_t> value =
      ResolveValue(field.decl(), absl::StripAsciiWhitespace(text));
  if (!value.ok()) return value.status();
  if (*value > max_inclusive) {
    return absl::OutOfRangeError(absl::StrCat("field '", field.name(),
                                              "': value ", *value,
                                              " outside [0:", field.bound(),
                                              ")"));
  }
  return *value;
}

// Parses "[lo:hi)" or a single value.
absl::StatusOr<Interval> ParseInterval(const Field& field,
                                       absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  if (absl::ConsumePrefix(&text, "[")) {
    if (!absl::ConsumeSuffix(&text, ")")) {
      return FieldError(field, text, "intervals are half-closed, [lo:hi)");
    }
    std::vector<absl::string_view> ends = absl::StrSplit(text, ':');
    if (ends.size() != 2) return FieldError(field, text, "expected lo:hi");
    absl::StatusOr<uint64_t> lo =
        ParseBoundedNumber(field, ends[0], field.bound() - 1);
    if (!lo.ok()) return lo.status();
    absl::StatusOr<uint64_t> hi =
        ParseBoundedNumber(field, ends[1], field.bound());
    if (!hi.ok()) return hi.status();
    if (*lo >= *hi) return FieldError(field, text, "empty interval");
    return Interval{*lo, *hi};
  }
  absl::StatusOr<uint64_t> v = ParseBoundedNumber(field, text, field.bound() - 1);
  if (!v.ok()) return v.status();
  return Interval{*v, *v + 1};
}

// Splits "{a,b,c}" or a single item "a"; strips a leading '!'.
std::vector<absl::string_view> SplitItems(absl::string_view text,
                                         bool* negated) {
  text = absl::StripAsciiWhitespace(text);
  *negated = absl::ConsumePrefix(&text, "!");
  text = absl::StripAsciiWhitespace(text);
  std::vector<absl::string_view> items;
  if (absl::ConsumePrefix(&text, "{")) {
    absl::ConsumeSuffix(&text, "}");
    text = absl::StripAsciiWhitespace(text);
    if (text.empty()) return items;
    // Items are split on commas outside of brackets.
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '[') ++depth;
      if (text[i] == ')' || text[i] == ']') --depth;
      if (text[i] == ',' && depth == 0) {
        items.push_back(absl::StripAsciiWhitespace(text.substr(start, i - start)));
        start = i + 1;
      }
    }
    items.push_back(absl::StripAsciiWhitespace(text.substr(start)));
    return items;
  }
  items.push_back(text);
  return items;
}

absl::StatusOr<Element> ParseDisjoint(const Field& field,
                                      absl::string_view text) {
  bool negated = false;
  std::vector<Interval> intervals;
  for (absl::string_view item : SplitItems(text, &negated)) {
    absl::StatusOr<Interval> interval = ParseInterval(field, item);
    if (!interval.ok()) return interval.status();
    intervals.push_back(*interval);
  }
  std::optional<DisjointRanges> ranges =
      DisjointRanges::FromIntervals(std::move(intervals), field.bound());
  if (negated) {
    if (!ranges.has_value()) return FieldTop(field);
    ranges = ranges->Complement();
  }
  if (!ranges.has_value()) return FieldError(field, text, "matches nothing");
  return Element(*std::move(ranges));
}

absl::StatusOr<Element> ParseSet(const Field& field, absl::string_view text) {
  bool negated = false;
  std::vector<uint64_t> values;
  for (absl::string_view item : SplitItems(text, &negated)) {
    absl::StatusOr<uint64_t> v = field.ResolveValue(item);
    if (!v.ok()) return v.status();
    values.push_back(*v);
  }
  if (values.empty()) {
    if (negated) return FieldTop(field);
    return FieldError(field, text, "matches nothing");
  }
  absl::StatusOr<ValueSet> set = ValueSet::Of(field.universe(), values);
  if (!set.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("field '", field.name(), "': ", set.status().message(),
                     " (value universe is frozen)"));
  }
  if (!negated) return Element(*std::move(set));
  std::optional<ValueSet> complement = set->Complement();
  if (!complement.has_value()) {
    return FieldError(field, text, "complement matches nothing");
  }
  return Element(*std::move(complement));
}

}  // namespace

absl::StatusOr<Element> ParseFieldValue(const Field& field,
                                        absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  if (IsWildcardText(text)) return FieldTop(field);
  if ((field.kind() == FieldKind::kValueSet ||
       field.kind() == FieldKind::kOptional) &&
      absl::EndsWith(text, "+")) {
    return FieldError(field, text, "wildcard interface names are not supported");
  }
  switch (field.kind()) {
    case FieldKind::kPrefix:
      return ParsePrefix(field, text);
    case FieldKind::kTbv: {
      absl::StatusOr<Tbv> tbv = Tbv::Parse(text);
      if (!tbv.ok()) return tbv.status();
      if (tbv->width() != field.width()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "field '", field.name(), "': '", text, "' has width ",
            tbv->width(), ", expected ", field.width()));
      }
      return Element(*std::move(tbv));
    }
    case FieldKind::kRange: {
      absl::StatusOr<Interval> interval = ParseInterval(field, text);
      if (!interval.ok()) return interval.status();
      return Element(Range(interval->lo, interval->hi, field.bound()));
    }
    case FieldKind::kDisjointRanges:
      return ParseDisjoint(field, text);
    case FieldKind::kValueSet:
      return ParseSet(field, text);
    case FieldKind::kOptional: {
      absl::StatusOr<uint64_t> v = field.ResolveValue(text);
      if (!v.ok()) return v.status();
      return Element(OptionalValue::Of(field.bound(), *v));
    }
  }
  return absl::InternalError("unknown field kind");
}

std::string FormatFieldValue(const Field& field, const Element& e) {
  if (e == FieldTop(field)) return "ANY";
  switch (field.kind()) {
    case FieldKind::kValueSet: {
      const ValueSet& s = e.as<ValueSet>();
      const ValueUniverse& u = *s.universe();
      const bool negated = u.has_other() && s.test(u.other_bit());
      std::vector<std::string> listed;
      for (size_t i = 0; i < u.explicit_count(); ++i) {
        if (s.test(i) != negated) listed.push_back(field.ValueName(u.ValueAt(i)));
      }
      if (!negated && listed.size() == 1) return listed.front();
      if (negated && listed.size() == 1) return absl::StrCat("!", listed.front());
      return absl::StrCat(negated ? "!{" : "{", absl::StrJoin(listed, ","), "}");
    }
    case FieldKind::kOptional:
      return field.ValueName(*e.as<OptionalValue>().value());
    default:
      return ToString(e);
  }
}

absl::StatusOr<Element> ParseMatch(const Schema& schema, const FieldMap& map) {
  std::vector<std::optional<Element>> coords(schema.size());
  for (const auto& [name, text] : map) {
    std::optional<size_t> index = schema.FieldIndex(name);
    if (!index.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown field '", name, "'"));
    }
    if (coords[*index].has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("field '", name, "' given twice"));
    }
    absl::StatusOr<Element> value = ParseFieldValue(schema.field(*index), text);
    if (!value.ok()) return value.status();
    coords[*index] = *std::move(value);
  }
  if (!schema.is_tuple()) {
    return coords[0].has_value() ? *coords[0] : FieldTop(schema.field(0));
  }
  TupleElement tuple;
  for (size_t i = 0; i < schema.size(); ++i) {
    tuple.coords.push_back(coords[i].has_value() ? *std::move(coords[i])
                                                 : FieldTop(schema.field(i)));
  }
  return Element(std::move(tuple));
}

FieldMap FormatMatch(const Schema& schema, const Element& e) {
  FieldMap map;
  for (size_t i = 0; i < schema.size(); ++i) {
    const Element& coord = schema.is_tuple() ? e.coords()[i] : e;
    std::string text = FormatFieldValue(schema.field(i), coord);
    if (text != "ANY") map.emplace_back(schema.field(i).name(), std::move(text));
  }
  return map;
}

std::string FormatElement(const Schema& schema, const Element& e) {
  FieldMap map = FormatMatch(schema, e);
  if (map.empty()) return "ANY";
  return absl::StrJoin(map, " ", absl::PairFormatter("="));
}

absl::Status NoteFieldValues(SchemaBuilder& builder, size_t field,
                             absl::string_view text) {
  const FieldDecl& decl = builder.decls()[field];
  if (decl.kind != FieldKind::kValueSet) return absl::OkStatus();
  text = absl::StripAsciiWhitespace(text);
  if (IsWildcardText(text)) return absl::OkStatus();
  bool negated = false;
  for (absl::string_view item : SplitItems(text, &negated)) {
    absl::StatusOr<uint64_t> v = ResolveValue(decl, item);
    if (!v.ok()) return v.status();
    if (absl::Status s = builder.NoteValue(field, *v); !s.ok()) return s;
  }
  return absl::OkStatus();
}

absl::Status NoteMatchValues(SchemaBuilder& builder, const FieldMap& map) {
  for (const auto& [name, text] : map) {
    std::optional<size_t> index = builder.FieldIndex(name);
    if (!index.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown field '", name, "'"));
    }
    if (absl::Status s = NoteFieldValues(builder, *index, text); !s.ok()) {
      return s;
    }
  }
  return absl::OkStatus();
}

}  // namespace pec
