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

#include "pec/element.h"

#include <algorithm>
#include <bit>
#include <cassert>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace pec {
namespace {

std::string Uint128ToDecimal(uint128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  return std::string(digits.rbegin(), digits.rend());
}

void AppendU64(std::string& out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xff));
  }
}

absl::Status Mismatch(absl::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("element shape mismatch: ", what));
}

std::optional<Element> MeetPrefix(const IpPrefix& a, const IpPrefix& b) {
  const IpPrefix& longer = a.length() >= b.length() ? a : b;
  const IpPrefix& shorter = a.length() >= b.length() ? b : a;
  if ((longer.address() & shorter.mask()) != shorter.address()) {
    return std::nullopt;
  }
  return Element(longer);
}

std::optional<Element> MeetTbv(const Tbv& a, const Tbv& b) {
  const size_t words = a.care().size();
  Tbv::Words care(words), value(words);
  for (size_t i = 0; i < words; ++i) {
    if ((a.care()[i] & b.care()[i] & (a.value()[i] ^ b.value()[i])) != 0) {
      return std::nullopt;
    }
    care[i] = a.care()[i] | b.care()[i];
    value[i] = a.value()[i] | b.value()[i];
  }
  return Element(Tbv::FromWords(a.width(), std::move(care), std::move(value)));
}

std::optional<Element> MeetRange(const Range& a, const Range& b) {
  uint64_t lo = std::max(a.lo(), b.lo());
  uint64_t hi = std::min(a.hi(), b.hi());
  if (lo >= hi) return std::nullopt;
  return Element(Range(lo, hi, a.bound()));
}

std::optional<Element> MeetDisjoint(const DisjointRanges& a,
                                    const DisjointRanges& b) {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  const size_t na = a.interval_count(), nb = b.interval_count();
  while (i < na && j < nb) {
    Interval x = a.interval(i), y = b.interval(j);
    uint64_t lo = std::max(x.lo, y.lo), hi = std::min(x.hi, y.hi);
    if (lo < hi) out.push_back({lo, hi});
    if (x.hi < y.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  auto result = DisjointRanges::FromIntervals(std::move(out), a.bound());
  if (!result.has_value()) return std::nullopt;
  return Element(*std::move(result));
}

std::optional<Element> MeetValueSet(const ValueSet& a, const ValueSet& b) {
  ValueSet::Words bits(a.bits().size());
  for (size_t i = 0; i < bits.size(); ++i) bits[i] = a.bits()[i] & b.bits()[i];
  auto result = ValueSet::FromBits(a.universe(), std::move(bits));
  if (!result.has_value()) return std::nullopt;
  return Element(*std::move(result));
}

std::optional<Element> MeetOptional(const OptionalValue& a,
                                    const OptionalValue& b) {
  if (a.is_wildcard()) return Element(b);
  if (b.is_wildcard() || a.value() == b.value()) return Element(a);
  return std::nullopt;
}

std::optional<Element> MeetTuple(const TupleElement& a,
                                 const TupleElement& b) {
  TupleElement result;
  result.coords.reserve(a.coords.size());
  for (size_t i = 0; i < a.coords.size(); ++i) {
    std::optional<Element> coord = Meet(a.coords[i], b.coords[i]);
    if (!coord.has_value()) return std::nullopt;
    result.coords.push_back(*std::move(coord));
  }
  return Element(std::move(result));
}

bool SubsetPrefix(const IpPrefix& a, const IpPrefix& b) {
  return a.length() >= b.length() && (a.address() & b.mask()) == b.address();
}

bool SubsetTbv(const Tbv& a, const Tbv& b) {
  for (size_t i = 0; i < a.care().size(); ++i) {
    if ((b.care()[i] & ~a.care()[i]) != 0) return false;
    if ((a.value()[i] & b.care()[i]) != b.value()[i]) return false;
  }
  return true;
}

bool SubsetDisjoint(const DisjointRanges& a, const DisjointRanges& b) {
  size_t j = 0;
  const size_t nb = b.interval_count();
  for (size_t i = 0; i < a.interval_count(); ++i) {
    Interval x = a.interval(i);
    while (j < nb && b.interval(j).hi <= x.lo) ++j;
    if (j == nb) return false;
    Interval y = b.interval(j);
    if (x.lo < y.lo || x.hi > y.hi) return false;
  }
  return true;
}

bool SubsetValueSet(const ValueSet& a, const ValueSet& b) {
  for (size_t i = 0; i < a.bits().size(); ++i) {
    if ((a.bits()[i] & ~b.bits()[i]) != 0) return false;
  }
  return true;
}

void AppendKey(std::string& out, const Element& e) {
  out.push_back(static_cast<char>(e.kind()));
  std::visit(
      [&out](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IpPrefix>) {
          AppendU64(out, v.width());
          AppendU64(out, v.length());
          AppendU64(out, static_cast<uint64_t>(v.address() >> 64));
          AppendU64(out, static_cast<uint64_t>(v.address()));
        } else if constexpr (std::is_same_v<T, Tbv>) {
          AppendU64(out, v.width());
          for (uint64_t w : v.care()) AppendU64(out, w);
          for (uint64_t w : v.value()) AppendU64(out, w);
        } else if constexpr (std::is_same_v<T, Range>) {
          AppendU64(out, v.bound());
          AppendU64(out, v.lo());
          AppendU64(out, v.hi());
        } else if constexpr (std::is_same_v<T, DisjointRanges>) {
          AppendU64(out, v.bound());
          AppendU64(out, v.interval_count());
          for (size_t i = 0; i < v.interval_count(); ++i) {
            AppendU64(out, v.interval(i).lo);
            AppendU64(out, v.interval(i).hi);
          }
        } else if constexpr (std::is_same_v<T, ValueSet>) {
          AppendU64(out, v.universe()->domain_size());
          AppendU64(out, v.universe()->bit_count());
          for (uint64_t w : v.bits()) AppendU64(out, w);
        } else if constexpr (std::is_same_v<T, OptionalValue>) {
          AppendU64(out, v.domain());
          out.push_back(v.is_wildcard() ? 0 : 1);
          AppendU64(out, v.value().value_or(0));
        } else {
          AppendU64(out, v.coords.size());
          for (const Element& c : v.coords) {
            std::string sub;
            AppendKey(sub, c);
            AppendU64(out, sub.size());
            out += sub;
          }
        }
      },
      e.variant());
}

absl::Status ValidateField(const Field& field, const Element& e) {
  auto bad = [&](absl::string_view why) {
    return absl::InvalidArgumentError(
        absl::StrCat("field '", field.name(), "': ", why));
  };
  switch (field.kind()) {
    case FieldKind::kPrefix:
      if (e.kind() != ElementKind::kPrefix) return bad("expected a prefix");
      if (e.as<IpPrefix>().width() != field.width()) {
        return bad("prefix width mismatch");
      }
      break;
    case FieldKind::kTbv:
      if (e.kind() != ElementKind::kTbv) return bad("expected a tbv");
      if (e.as<Tbv>().width() != field.width()) return bad("tbv width mismatch");
      break;
    case FieldKind::kRange:
      if (e.kind() != ElementKind::kRange) return bad("expected a range");
      if (e.as<Range>().bound() != field.bound()) return bad("range bound mismatch");
      break;
    case FieldKind::kDisjointRanges:
      if (e.kind() != ElementKind::kDisjointRanges) {
        return bad("expected disjoint ranges");
      }
      if (e.as<DisjointRanges>().bound() != field.bound()) {
        return bad("range bound mismatch");
      }
      break;
    case FieldKind::kValueSet:
      if (e.kind() != ElementKind::kValueSet) return bad("expected a set");
      if (e.as<ValueSet>().universe() != field.universe() &&
          !(*e.as<ValueSet>().universe() == *field.universe())) {
        return bad("set built over a different value universe");
      }
      break;
    case FieldKind::kOptional:
      if (e.kind() != ElementKind::kOptional) return bad("expected an optional");
      if (e.as<OptionalValue>().domain() != field.bound()) {
        return bad("optional domain mismatch");
      }
      break;
  }
  return absl::OkStatus();
}

}  // namespace

uint128 IpPrefix::MaskFor(uint32_t length, uint32_t width) {
  if (length == 0) return 0;
  uint128 ones = length == 128 ? ~uint128{0} : ((uint128{1} << length) - 1);
  return ones << (width - length);
}

IpPrefix::IpPrefix(uint128 address, uint32_t length, uint32_t width)
    : address_(address & MaskFor(length, width)),
      length_(static_cast<uint16_t>(length)),
      width_(static_cast<uint16_t>(width)) {
  assert(length <= width && width <= 128);
}

Tbv Tbv::Wildcard(uint32_t width) {
  return Tbv(width, Words(WordCount(width), 0), Words(WordCount(width), 0));
}

absl::StatusOr<Tbv> Tbv::Parse(absl::string_view text) {
  if (text.empty()) return absl::InvalidArgumentError("empty ternary vector");
  const uint32_t width = static_cast<uint32_t>(text.size());
  Words care(WordCount(width), 0), value(WordCount(width), 0);
  for (uint32_t p = 0; p < width; ++p) {
    const uint64_t bit = uint64_t{1} << (p % 64);
    switch (text[p]) {
      case '0':
        care[p / 64] |= bit;
        break;
      case '1':
        care[p / 64] |= bit;
        value[p / 64] |= bit;
        break;
      case '*':
      case 'x':
      case 'X':
        break;
      default:
        return absl::InvalidArgumentError(absl::StrCat(
            "bad ternary digit '", std::string(1, text[p]), "' in '", text,
            "'"));
    }
  }
  return Tbv(width, std::move(care), std::move(value));
}

Tbv Tbv::FromWords(uint32_t width, Words care, Words value) {
  const size_t words = WordCount(width);
  care.resize(words, 0);
  value.resize(words, 0);
  if (width % 64 != 0) {
    const uint64_t tail = (uint64_t{1} << (width % 64)) - 1;
    care[words - 1] &= tail;
  }
  for (size_t i = 0; i < words; ++i) value[i] &= care[i];
  return Tbv(width, std::move(care), std::move(value));
}

char Tbv::digit(uint32_t position) const {
  const uint64_t bit = uint64_t{1} << (position % 64);
  if ((care_[position / 64] & bit) == 0) return '*';
  return (value_[position / 64] & bit) != 0 ? '1' : '0';
}

uint32_t Tbv::care_count() const {
  uint32_t count = 0;
  for (uint64_t w : care_) count += static_cast<uint32_t>(std::popcount(w));
  return count;
}

std::string Tbv::ToString() const {
  std::string out(width_, '*');
  for (uint32_t p = 0; p < width_; ++p) out[p] = digit(p);
  return out;
}

Range::Range(uint64_t lo, uint64_t hi, uint64_t bound)
    : lo_(lo), hi_(hi), bound_(bound) {
  assert(lo < hi && hi <= bound);
}

std::optional<DisjointRanges> DisjointRanges::FromIntervals(
    std::vector<Interval> intervals, uint64_t bound) {
  std::erase_if(intervals, [](const Interval& i) { return i.lo >= i.hi; });
  if (intervals.empty()) return std::nullopt;
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (const Interval& i : intervals) {
    if (!merged.empty() && i.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, i.hi);
    } else {
      merged.push_back(i);
    }
  }
  auto bounds = std::make_shared<std::vector<uint64_t>>();
  bounds->reserve(2 * merged.size() + 2);
  bounds->push_back(0);
  for (const Interval& i : merged) {
    if (i.lo != 0) bounds->push_back(i.lo);
    if (i.hi != bound) bounds->push_back(i.hi);
  }
  bounds->push_back(bound);
  const int polarity = merged.front().lo == 0 ? 0 : 1;
  return DisjointRanges(std::move(bounds), polarity);
}

DisjointRanges DisjointRanges::Full(uint64_t bound) {
  return DisjointRanges(
      std::make_shared<const std::vector<uint64_t>>(
          std::vector<uint64_t>{0, bound}),
      0);
}

size_t DisjointRanges::interval_count() const {
  const size_t segments = bounds_->size() - 1;
  if (segments <= static_cast<size_t>(polarity_)) return 0;
  return (segments - polarity_ + 1) / 2;
}

std::vector<Interval> DisjointRanges::intervals() const {
  std::vector<Interval> out;
  out.reserve(interval_count());
  for (size_t i = 0; i < interval_count(); ++i) out.push_back(interval(i));
  return out;
}

std::optional<DisjointRanges> DisjointRanges::Complement() const {
  DisjointRanges result(bounds_, polarity_ ^ 1);
  if (result.interval_count() == 0) return std::nullopt;
  return result;
}

BigInt DisjointRanges::Cardinality() const {
  BigInt total = 0;
  for (size_t i = 0; i < interval_count(); ++i) {
    Interval x = interval(i);
    total += x.hi - x.lo;
  }
  return total;
}

ValueSet ValueSet::Full(std::shared_ptr<const ValueUniverse> universe) {
  const size_t n = universe->bit_count();
  Words bits(WordCount(n), ~uint64_t{0});
  if (n % 64 != 0) bits.back() = (uint64_t{1} << (n % 64)) - 1;
  return ValueSet(std::move(universe), std::move(bits));
}

std::optional<ValueSet> ValueSet::FromBits(
    std::shared_ptr<const ValueUniverse> universe, Words bits) {
  const size_t n = universe->bit_count();
  bits.resize(WordCount(n), 0);
  if (n % 64 != 0) bits.back() &= (uint64_t{1} << (n % 64)) - 1;
  if (std::all_of(bits.begin(), bits.end(), [](uint64_t w) { return w == 0; })) {
    return std::nullopt;
  }
  return ValueSet(std::move(universe), std::move(bits));
}

absl::StatusOr<ValueSet> ValueSet::Of(
    std::shared_ptr<const ValueUniverse> universe,
    const std::vector<uint64_t>& values) {
  Words bits(WordCount(universe->bit_count()), 0);
  for (uint64_t v : values) {
    std::optional<size_t> index = universe->IndexOf(v);
    if (!index.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("value ", v, " was not seen in the input"));
    }
    bits[*index / 64] |= uint64_t{1} << (*index % 64);
  }
  auto set = FromBits(std::move(universe), std::move(bits));
  if (!set.has_value()) return absl::InvalidArgumentError("empty value set");
  return *std::move(set);
}

bool ValueSet::ContainsValue(uint64_t value) const {
  if (value >= universe_->domain_size()) return false;
  if (std::optional<size_t> index = universe_->IndexOf(value)) {
    return test(*index);
  }
  return universe_->has_other() && test(universe_->other_bit());
}

std::optional<ValueSet> ValueSet::Complement() const {
  Words bits = bits_;
  for (uint64_t& w : bits) w = ~w;
  return FromBits(universe_, std::move(bits));
}

BigInt ValueSet::Cardinality() const {
  uint64_t count = 0;
  for (size_t i = 0; i < universe_->explicit_count(); ++i) count += test(i);
  BigInt total = count;
  if (universe_->has_other() && test(universe_->other_bit())) {
    total += universe_->other_count();
  }
  return total;
}

absl::string_view ElementKindName(ElementKind kind) {
  switch (kind) {
    case ElementKind::kPrefix:
      return "prefix";
    case ElementKind::kTbv:
      return "tbv";
    case ElementKind::kRange:
      return "range";
    case ElementKind::kDisjointRanges:
      return "disjoint_ranges";
    case ElementKind::kValueSet:
      return "set";
    case ElementKind::kOptional:
      return "optional";
    case ElementKind::kTuple:
      return "tuple";
  }
  return "unknown";
}

absl::Status CheckCompatible(const Element& a, const Element& b) {
  if (a.kind() != b.kind()) {
    return Mismatch(absl::StrCat(ElementKindName(a.kind()), " vs ",
                                 ElementKindName(b.kind())));
  }
  switch (a.kind()) {
    case ElementKind::kPrefix:
      if (a.as<IpPrefix>().width() != b.as<IpPrefix>().width()) {
        return Mismatch("prefix widths differ");
      }
      break;
    case ElementKind::kTbv:
      if (a.as<Tbv>().width() != b.as<Tbv>().width()) {
        return Mismatch("tbv widths differ");
      }
      break;
    case ElementKind::kRange:
      if (a.as<Range>().bound() != b.as<Range>().bound()) {
        return Mismatch("range bounds differ");
      }
      break;
    case ElementKind::kDisjointRanges:
      if (a.as<DisjointRanges>().bound() != b.as<DisjointRanges>().bound()) {
        return Mismatch("range bounds differ");
      }
      break;
    case ElementKind::kValueSet: {
      const auto& ua = a.as<ValueSet>().universe();
      const auto& ub = b.as<ValueSet>().universe();
      if (ua != ub && !(*ua == *ub)) return Mismatch("value universes differ");
      break;
    }
    case ElementKind::kOptional:
      if (a.as<OptionalValue>().domain() != b.as<OptionalValue>().domain()) {
        return Mismatch("optional domains differ");
      }
      break;
    case ElementKind::kTuple: {
      if (a.coords().size() != b.coords().size()) {
        return Mismatch("tuple arities differ");
      }
      for (size_t i = 0; i < a.coords().size(); ++i) {
        absl::Status s = CheckCompatible(a.coords()[i], b.coords()[i]);
        if (!s.ok()) return s;
      }
      break;
    }
  }
  return absl::OkStatus();
}

std::optional<Element> Meet(const Element& a, const Element& b) {
  switch (a.kind()) {
    case ElementKind::kPrefix:
      return MeetPrefix(a.as<IpPrefix>(), b.as<IpPrefix>());
    case ElementKind::kTbv:
      return MeetTbv(a.as<Tbv>(), b.as<Tbv>());
    case ElementKind::kRange:
      return MeetRange(a.as<Range>(), b.as<Range>());
    case ElementKind::kDisjointRanges:
      return MeetDisjoint(a.as<DisjointRanges>(), b.as<DisjointRanges>());
    case ElementKind::kValueSet:
      return MeetValueSet(a.as<ValueSet>(), b.as<ValueSet>());
    case ElementKind::kOptional:
      return MeetOptional(a.as<OptionalValue>(), b.as<OptionalValue>());
    case ElementKind::kTuple:
      return MeetTuple(a.as<TupleElement>(), b.as<TupleElement>());
  }
  return std::nullopt;
}

bool SubsetOf(const Element& a, const Element& b) {
  switch (a.kind()) {
    case ElementKind::kPrefix:
      return SubsetPrefix(a.as<IpPrefix>(), b.as<IpPrefix>());
    case ElementKind::kTbv:
      return SubsetTbv(a.as<Tbv>(), b.as<Tbv>());
    case ElementKind::kRange:
      return b.as<Range>().lo() <= a.as<Range>().lo() &&
             a.as<Range>().hi() <= b.as<Range>().hi();
    case ElementKind::kDisjointRanges:
      return SubsetDisjoint(a.as<DisjointRanges>(), b.as<DisjointRanges>());
    case ElementKind::kValueSet:
      return SubsetValueSet(a.as<ValueSet>(), b.as<ValueSet>());
    case ElementKind::kOptional: {
      const auto& x = a.as<OptionalValue>();
      const auto& y = b.as<OptionalValue>();
      return y.is_wildcard() || x == y;
    }
    case ElementKind::kTuple:
      for (size_t i = 0; i < a.coords().size(); ++i) {
        if (!SubsetOf(a.coords()[i], b.coords()[i])) return false;
      }
      return true;
  }
  return false;
}

absl::StatusOr<std::optional<Element>> Intersect(const Element& a,
                                                 const Element& b) {
  if (absl::Status s = CheckCompatible(a, b); !s.ok()) return s;
  return Meet(a, b);
}

absl::StatusOr<bool> IsSubset(const Element& a, const Element& b) {
  if (absl::Status s = CheckCompatible(a, b); !s.ok()) return s;
  return SubsetOf(a, b);
}

BigInt Cardinality(const Element& a) {
  switch (a.kind()) {
    case ElementKind::kPrefix:
      return a.as<IpPrefix>().Cardinality();
    case ElementKind::kTbv:
      return a.as<Tbv>().Cardinality();
    case ElementKind::kRange:
      return a.as<Range>().Cardinality();
    case ElementKind::kDisjointRanges:
      return a.as<DisjointRanges>().Cardinality();
    case ElementKind::kValueSet:
      return a.as<ValueSet>().Cardinality();
    case ElementKind::kOptional:
      return a.as<OptionalValue>().Cardinality();
    case ElementKind::kTuple: {
      BigInt product = 1;
      for (const Element& c : a.coords()) product *= Cardinality(c);
      return product;
    }
  }
  return 0;
}

absl::StatusOr<std::optional<Element>> Complement(const Element& a) {
  switch (a.kind()) {
    case ElementKind::kDisjointRanges: {
      auto c = a.as<DisjointRanges>().Complement();
      if (!c.has_value()) return std::optional<Element>();
      return std::optional<Element>(Element(*std::move(c)));
    }
    case ElementKind::kValueSet: {
      auto c = a.as<ValueSet>().Complement();
      if (!c.has_value()) return std::optional<Element>();
      return std::optional<Element>(Element(*std::move(c)));
    }
    default:
      return absl::UnimplementedError(absl::StrCat(
          "complement is not supported for ", ElementKindName(a.kind())));
  }
}

std::string CanonicalKey(const Element& a) {
  std::string key;
  AppendKey(key, a);
  return key;
}

Element FieldTop(const Field& field) {
  switch (field.kind()) {
    case FieldKind::kPrefix:
      return Element(IpPrefix::Any(field.width()));
    case FieldKind::kTbv:
      return Element(Tbv::Wildcard(field.width()));
    case FieldKind::kRange:
      return Element(Range(0, field.bound(), field.bound()));
    case FieldKind::kDisjointRanges:
      return Element(DisjointRanges::Full(field.bound()));
    case FieldKind::kValueSet:
      return Element(ValueSet::Full(field.universe()));
    case FieldKind::kOptional:
      return Element(OptionalValue::Wildcard(field.bound()));
  }
  return Element(IpPrefix::Any(1));
}

Element Top(const Schema& schema) {
  if (!schema.is_tuple()) return FieldTop(schema.field(0));
  TupleElement tuple;
  for (const Field& field : schema.fields()) {
    tuple.coords.push_back(FieldTop(field));
  }
  return Element(std::move(tuple));
}

absl::Status Validate(const Schema& schema, const Element& e) {
  if (!schema.is_tuple()) return ValidateField(schema.field(0), e);
  if (e.kind() != ElementKind::kTuple) {
    return absl::InvalidArgumentError("expected a tuple element");
  }
  if (e.coords().size() != schema.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected a ", schema.size(), "-tuple, got ",
                     e.coords().size(), " coordinates"));
  }
  for (size_t i = 0; i < schema.size(); ++i) {
    if (absl::Status s = ValidateField(schema.field(i), e.coords()[i]);
        !s.ok()) {
      return s;
    }
  }
  return absl::OkStatus();
}

std::string ToString(const Element& e) {
  switch (e.kind()) {
    case ElementKind::kPrefix: {
      const IpPrefix& p = e.as<IpPrefix>();
      if (p.width() == 32) {
        const auto a = static_cast<uint32_t>(p.address());
        return absl::StrCat(a >> 24, ".", (a >> 16) & 0xff, ".",
                            (a >> 8) & 0xff, ".", a & 0xff, "/", p.length());
      }
      return absl::StrCat(Uint128ToDecimal(p.address()), "/", p.length());
    }
    case ElementKind::kTbv:
      return e.as<Tbv>().ToString();
    case ElementKind::kRange:
      return absl::StrCat("[", e.as<Range>().lo(), ":", e.as<Range>().hi(),
                          ")");
    case ElementKind::kDisjointRanges: {
      std::vector<std::string> parts;
      for (const Interval& i : e.as<DisjointRanges>().intervals()) {
        parts.push_back(absl::StrCat("[", i.lo, ":", i.hi, ")"));
      }
      return absl::StrCat("{", absl::StrJoin(parts, ","), "}");
    }
    case ElementKind::kValueSet: {
      const ValueSet& s = e.as<ValueSet>();
      const ValueUniverse& u = *s.universe();
      const bool negated = u.has_other() && s.test(u.other_bit());
      std::vector<uint64_t> listed;
      for (size_t i = 0; i < u.explicit_count(); ++i) {
        if (s.test(i) != negated) listed.push_back(u.ValueAt(i));
      }
      return absl::StrCat(negated ? "!{" : "{", absl::StrJoin(listed, ","),
                          "}");
    }
    case ElementKind::kOptional: {
      const OptionalValue& o = e.as<OptionalValue>();
      return o.is_wildcard() ? "*" : absl::StrCat(*o.value());
    }
    case ElementKind::kTuple: {
      std::vector<std::string> parts;
      for (const Element& c : e.coords()) parts.push_back(ToString(c));
      return absl::StrCat("(", absl::StrJoin(parts, ", "), ")");
    }
  }
  return "?";
}

}  // namespace pec
