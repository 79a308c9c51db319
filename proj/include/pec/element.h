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

#ifndef PEC_ELEMENT_H_
#define PEC_ELEMENT_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include "absl/strings/string_view.h"
#include <utility>
#include <variant>
#include <vector>

#include "absl/container/inlined_vector.h"
#include "absl/hash/hash.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pec/big_int.h"
#include "pec/schema.h"

namespace pec {

// Match conditions ("elements") form a finite partial order under subset
// inclusion. All element values are immutable and canonical: two elements of
// the same shape compare equal iff they match the same set of headers. The
// empty set is never an element; operations that can produce it return
// std::nullopt instead.

// An address prefix of a `width`-bit field. Host bits are always zero.
class IpPrefix {
 public:
  // Clears the bits of `address` below `length`. Requires
  // length <= width <= 128.
  IpPrefix(uint128 address, uint32_t length, uint32_t width);
  static IpPrefix Any(uint32_t width) { return IpPrefix(0, 0, width); }

  uint128 address() const { return address_; }
  uint32_t length() const { return length_; }
  uint32_t width() const { return width_; }
  // The high `length` bits of the field.
  uint128 mask() const { return MaskFor(length_, width_); }
  BigInt Cardinality() const { return Pow2(width_ - length_); }

  static uint128 MaskFor(uint32_t length, uint32_t width);

  bool operator==(const IpPrefix& other) const {
    return width_ == other.width_ && length_ == other.length_ &&
           address_ == other.address_;
  }
  template <typename H>
  friend H AbslHashValue(H h, const IpPrefix& p) {
    return H::combine(std::move(h), static_cast<uint64_t>(p.address_ >> 64),
                      static_cast<uint64_t>(p.address_), p.length_, p.width_);
  }

 private:
  uint128 address_;
  uint16_t length_;
  uint16_t width_;
};

// Fixed-width ternary bit vector. Position 0 is the leftmost digit of the
// textual form. Positions whose `care` bit is clear are wildcards and carry a
// zero `value` bit.
class Tbv {
 public:
  using Words = absl::InlinedVector<uint64_t, 2>;

  static Tbv Wildcard(uint32_t width);
  // Parses a string over {'0', '1', '*'}; 'x' is accepted for '*'.
  static absl::StatusOr<Tbv> Parse(absl::string_view text);
  // Builds from raw words; value bits outside `care` are cleared.
  static Tbv FromWords(uint32_t width, Words care, Words value);

  uint32_t width() const { return width_; }
  const Words& care() const { return care_; }
  const Words& value() const { return value_; }
  // '0', '1' or '*'.
  char digit(uint32_t position) const;
  uint32_t care_count() const;
  BigInt Cardinality() const { return Pow2(width_ - care_count()); }
  std::string ToString() const;

  static size_t WordCount(uint32_t width) { return (width + 63) / 64; }

  bool operator==(const Tbv& other) const {
    return width_ == other.width_ && care_ == other.care_ &&
           value_ == other.value_;
  }
  template <typename H>
  friend H AbslHashValue(H h, const Tbv& t) {
    h = H::combine(std::move(h), t.width_);
    for (size_t i = 0; i < t.care_.size(); ++i) {
      h = H::combine(std::move(h), t.care_[i], t.value_[i]);
    }
    return h;
  }

 private:
  Tbv(uint32_t width, Words care, Words value)
      : width_(width), care_(std::move(care)), value_(std::move(value)) {}

  uint32_t width_;
  Words care_;
  Words value_;
};

// Half-closed interval [lo:hi) of a field whose values lie in [0:bound).
class Range {
 public:
  // Requires lo < hi <= bound.
  Range(uint64_t lo, uint64_t hi, uint64_t bound);

  uint64_t lo() const { return lo_; }
  uint64_t hi() const { return hi_; }
  uint64_t bound() const { return bound_; }
  BigInt Cardinality() const { return BigInt(hi_ - lo_); }

  bool operator==(const Range& other) const = default;
  template <typename H>
  friend H AbslHashValue(H h, const Range& r) {
    return H::combine(std::move(h), r.lo_, r.hi_, r.bound_);
  }

 private:
  uint64_t lo_;
  uint64_t hi_;
  uint64_t bound_;
};

struct Interval {
  uint64_t lo;
  uint64_t hi;
  bool operator==(const Interval& other) const = default;
};

// Union of disjoint half-closed intervals within [0:bound).
//
// The boundaries live in one sorted array that always starts at 0 and ends at
// `bound`; consecutive entries delimit segments, and every other segment is
// covered, starting with segment 0 or segment 1 depending on the polarity.
// For {[10:12), [16:27)} the array is [0, 10, 12, 16, 27, bound] with covered
// segments 1 and 3. Complement flips the polarity and shares the array, so it
// takes constant time.
class DisjointRanges {
 public:
  // Normalizes (sorts, merges touching or overlapping intervals, drops empty
  // ones). Returns nullopt if nothing is covered. Requires hi <= bound.
  static std::optional<DisjointRanges> FromIntervals(
      std::vector<Interval> intervals, uint64_t bound);
  static DisjointRanges Full(uint64_t bound);

  uint64_t bound() const { return bounds_->back(); }
  size_t interval_count() const;
  Interval interval(size_t i) const {
    return {(*bounds_)[polarity_ + 2 * i], (*bounds_)[polarity_ + 2 * i + 1]};
  }
  std::vector<Interval> intervals() const;
  const std::vector<uint64_t>& boundaries() const { return *bounds_; }
  // 0 if the first covered segment starts at 0, else 1.
  int polarity() const { return polarity_; }

  // Constant time; nullopt if this covers the whole domain.
  std::optional<DisjointRanges> Complement() const;
  BigInt Cardinality() const;

  bool operator==(const DisjointRanges& other) const {
    return polarity_ == other.polarity_ &&
           (bounds_ == other.bounds_ || *bounds_ == *other.bounds_);
  }
  template <typename H>
  friend H AbslHashValue(H h, const DisjointRanges& d) {
    return H::combine(std::move(h), d.polarity_, *d.bounds_);
  }

 private:
  DisjointRanges(std::shared_ptr<const std::vector<uint64_t>> bounds,
                 int polarity)
      : bounds_(std::move(bounds)), polarity_(polarity) {}

  std::shared_ptr<const std::vector<uint64_t>> bounds_;
  int polarity_;
};

// Subset of a value-set field's domain, as a bitset over the field's
// ValueUniverse.
class ValueSet {
 public:
  using Words = absl::InlinedVector<uint64_t, 1>;

  static ValueSet Full(std::shared_ptr<const ValueUniverse> universe);
  // nullopt if `bits` has no bit set. Bits beyond the universe are ignored.
  static std::optional<ValueSet> FromBits(
      std::shared_ptr<const ValueUniverse> universe, Words bits);
  // Set of explicit values. Every value must be part of the universe.
  static absl::StatusOr<ValueSet> Of(
      std::shared_ptr<const ValueUniverse> universe,
      const std::vector<uint64_t>& values);

  const std::shared_ptr<const ValueUniverse>& universe() const {
    return universe_;
  }
  const Words& bits() const { return bits_; }
  bool test(size_t index) const {
    return (bits_[index / 64] >> (index % 64)) & 1;
  }
  // Whether the set contains the domain value `value`.
  bool ContainsValue(uint64_t value) const;

  std::optional<ValueSet> Complement() const;
  BigInt Cardinality() const;

  bool operator==(const ValueSet& other) const {
    return (universe_ == other.universe_ || *universe_ == *other.universe_) &&
           bits_ == other.bits_;
  }
  template <typename H>
  friend H AbslHashValue(H h, const ValueSet& s) {
    return H::combine(std::move(h), s.universe_->domain_size(), s.bits_);
  }

  static size_t WordCount(size_t bits) { return (bits + 63) / 64; }

 private:
  ValueSet(std::shared_ptr<const ValueUniverse> universe, Words bits)
      : universe_(std::move(universe)), bits_(std::move(bits)) {}

  std::shared_ptr<const ValueUniverse> universe_;
  Words bits_;
};

// Either every value of a `domain`-sized field or exactly one of them.
class OptionalValue {
 public:
  static OptionalValue Wildcard(uint64_t domain) {
    return OptionalValue(domain, std::nullopt);
  }
  // Requires value < domain.
  static OptionalValue Of(uint64_t domain, uint64_t value) {
    return OptionalValue(domain, value);
  }

  uint64_t domain() const { return domain_; }
  bool is_wildcard() const { return !value_.has_value(); }
  const std::optional<uint64_t>& value() const { return value_; }
  BigInt Cardinality() const {
    return value_.has_value() ? BigInt(1) : BigInt(domain_);
  }

  bool operator==(const OptionalValue& other) const = default;
  template <typename H>
  friend H AbslHashValue(H h, const OptionalValue& o) {
    return H::combine(std::move(h), o.domain_, o.value_);
  }

 private:
  OptionalValue(uint64_t domain, std::optional<uint64_t> value)
      : domain_(domain), value_(value) {}

  uint64_t domain_;
  std::optional<uint64_t> value_;
};

class Element;

// Cartesian product of per-field elements, ordered point-wise. Tuples have
// no complement.
struct TupleElement {
  std::vector<Element> coords;

  bool operator==(const TupleElement& other) const;
  template <typename H>
  friend H AbslHashValue(H h, const TupleElement& t);
};

enum class ElementKind {
  kPrefix,
  kTbv,
  kRange,
  kDisjointRanges,
  kValueSet,
  kOptional,
  kTuple,
};

absl::string_view ElementKindName(ElementKind kind);

class Element {
 public:
  using Variant = std::variant<IpPrefix, Tbv, Range, DisjointRanges, ValueSet,
                               OptionalValue, TupleElement>;

  explicit Element(IpPrefix v) : value_(std::move(v)) {}
  explicit Element(Tbv v) : value_(std::move(v)) {}
  explicit Element(Range v) : value_(std::move(v)) {}
  explicit Element(DisjointRanges v) : value_(std::move(v)) {}
  explicit Element(ValueSet v) : value_(std::move(v)) {}
  explicit Element(OptionalValue v) : value_(std::move(v)) {}
  explicit Element(TupleElement v) : value_(std::move(v)) {}

  ElementKind kind() const { return static_cast<ElementKind>(value_.index()); }
  const Variant& variant() const { return value_; }
  template <typename T>
  const T& as() const {
    return std::get<T>(value_);
  }
  const std::vector<Element>& coords() const {
    return std::get<TupleElement>(value_).coords;
  }

  // Equal iff both match the same headers (given compatible shapes).
  bool operator==(const Element& other) const { return value_ == other.value_; }
  template <typename H>
  friend H AbslHashValue(H h, const Element& e) {
    h = H::combine(std::move(h), e.value_.index());
    return std::visit(
        [&h](const auto& v) { return H::combine(std::move(h), v); }, e.value_);
  }

 private:
  Variant value_;
};

inline bool TupleElement::operator==(const TupleElement& other) const {
  return coords == other.coords;
}

template <typename H>
H AbslHashValue(H h, const TupleElement& t) {
  return H::combine_contiguous(std::move(h), t.coords.data(), t.coords.size());
}

// OK iff `a` and `b` have the same shape: same element kind, widths, bounds
// and value universes, coordinate by coordinate for tuples.
absl::Status CheckCompatible(const Element& a, const Element& b);

// Unchecked algebra. Both arguments must be compatible (see CheckCompatible);
// this is the hot path used by the lattice after validating its inputs.
//
// Greatest lower bound of `a` and `b`, or nullopt if no header is in both.
std::optional<Element> Meet(const Element& a, const Element& b);
// Whether every header of `a` is in `b`.
bool SubsetOf(const Element& a, const Element& b);

// Checked variants; fail with InvalidArgument on shape mismatch.
absl::StatusOr<std::optional<Element>> Intersect(const Element& a,
                                                 const Element& b);
absl::StatusOr<bool> IsSubset(const Element& a, const Element& b);

// Exact number of headers matched by `a`.
BigInt Cardinality(const Element& a);

// Set complement within the field domain; nullopt if `a` is the whole domain.
// Only disjoint ranges and value sets support it (Unimplemented otherwise).
absl::StatusOr<std::optional<Element>> Complement(const Element& a);

// Byte string that is equal for two compatible elements iff they match the
// same headers.
std::string CanonicalKey(const Element& a);

// Full-domain element of one field.
Element FieldTop(const Field& field);
// Full-domain element of the schema: a tuple unless the schema has exactly
// one field.
Element Top(const Schema& schema);

// OK iff `e` has exactly the shape the schema prescribes.
absl::Status Validate(const Schema& schema, const Element& e);

// Canonical text without field names: CIDR "a.b.c.d/p" for 32-bit prefixes
// ("<address>/<p>" otherwise), '0'/'1'/'*' strings, "[lo:hi)",
// "{[lo:hi),...}", value sets as "{v,...}" or "!{v,...}", tuples as
// "(x, y, ...)".
std::string ToString(const Element& e);

}  // namespace pec

#endif  // PEC_ELEMENT_H_
