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

#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pec/oracle.h"
#include "pec/schema.h"
#include "test_util.h"

namespace pec {
namespace {

using ::pec::testing::MixedSchema;
using ::pec::testing::MustFreeze;
using ::pec::testing::RandomElement;
using ::pec::testing::T;

TEST(IpPrefixTest, ClearsHostBits) {
  IpPrefix p(0xAB404FA0, 24, 32);
  EXPECT_EQ(p.address(), 0xAB404F00);
  EXPECT_EQ(ToString(Element(p)), "171.64.79.0/24");
  EXPECT_EQ(p.Cardinality(), 256);
}

TEST(IpPrefixTest, MeetOfNestedPrefixesIsTheLonger) {
  Element outer(IpPrefix(0x0A390000, 18, 32));
  Element inner(IpPrefix(0x0A392000, 19, 32));
  EXPECT_EQ(Meet(outer, inner), inner);
  EXPECT_TRUE(SubsetOf(inner, outer));
  EXPECT_FALSE(SubsetOf(outer, inner));
}

TEST(IpPrefixTest, SiblingPrefixesAreDisjoint) {
  Element x(IpPrefix(0x0A390000, 19, 32));
  Element y(IpPrefix(0x0A392000, 19, 32));
  EXPECT_EQ(Meet(x, y), std::nullopt);
}

TEST(IpPrefixTest, WideFields) {
  Element any(IpPrefix::Any(128));
  EXPECT_EQ(Cardinality(any), BigInt(1) << 128);
  Element half(IpPrefix(uint128{1} << 127, 1, 128));
  EXPECT_EQ(Cardinality(half), BigInt(1) << 127);
  EXPECT_TRUE(SubsetOf(half, any));
}

TEST(TbvTest, ParseAndFormat) {
  absl::StatusOr<Tbv> t = Tbv::Parse("1x0*");
  ASSERT_TRUE(t.ok());
  EXPECT_EQ(t->ToString(), "1*0*");
  EXPECT_EQ(t->care_count(), 2);
  EXPECT_EQ(t->digit(0), '1');
  EXPECT_EQ(t->digit(1), '*');
  EXPECT_FALSE(Tbv::Parse("10a").ok());
  EXPECT_FALSE(Tbv::Parse("").ok());
}

TEST(TbvTest, Meet) {
  EXPECT_EQ(Meet(T("1*1"), T("11*")), T("111"));
  EXPECT_EQ(Meet(T("1*1"), T("*10")), std::nullopt);
  EXPECT_EQ(Meet(T("***"), T("0*1")), T("0*1"));
}

TEST(TbvTest, SpansWords) {
  std::string a(130, '*');
  std::string b(130, '*');
  a[3] = '1';
  b[129] = '0';
  std::string both = a;
  both[129] = '0';
  EXPECT_EQ(Meet(T(a), T(b)), T(both));
  EXPECT_EQ(Cardinality(T(both)), BigInt(1) << 128);
  b[3] = '0';
  EXPECT_EQ(Meet(T(a), T(b)), std::nullopt);
}

TEST(RangeTest, MeetAndSubset) {
  Element a(Range(2, 10, 16));
  Element b(Range(8, 16, 16));
  EXPECT_EQ(Meet(a, b), Element(Range(8, 10, 16)));
  EXPECT_EQ(Meet(a, Element(Range(10, 12, 16))), std::nullopt);
  EXPECT_TRUE(SubsetOf(Element(Range(3, 4, 16)), a));
  EXPECT_EQ(ToString(a), "[2:10)");
}

TEST(DisjointRangesTest, NormalizesIntervals) {
  auto d = DisjointRanges::FromIntervals({{16, 27}, {10, 12}, {11, 14}, {5, 5}},
                                         100);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->intervals(), (std::vector<Interval>{{10, 14}, {16, 27}}));
  EXPECT_EQ(d->Cardinality(), 15);
  EXPECT_EQ(ToString(Element(*d)), "{[10:14),[16:27)}");
  EXPECT_EQ(DisjointRanges::FromIntervals({{3, 3}}, 10), std::nullopt);
}

TEST(DisjointRangesTest, ComplementSharesBoundaries) {
  auto d = DisjointRanges::FromIntervals({{10, 12}, {16, 27}}, 100);
  ASSERT_TRUE(d.has_value());
  std::optional<DisjointRanges> c = d->Complement();
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(&c->boundaries(), &d->boundaries());
  EXPECT_EQ(c->intervals(),
            (std::vector<Interval>{{0, 10}, {12, 16}, {27, 100}}));
  EXPECT_EQ(c->Complement(), d);
  EXPECT_EQ(DisjointRanges::Full(100).Complement(), std::nullopt);
}

TEST(DisjointRangesTest, Meet) {
  auto a = DisjointRanges::FromIntervals({{0, 5}, {10, 20}}, 30);
  auto b = DisjointRanges::FromIntervals({{3, 12}, {25, 30}}, 30);
  auto want = DisjointRanges::FromIntervals({{3, 5}, {10, 12}}, 30);
  EXPECT_EQ(Meet(Element(*a), Element(*b)), Element(*want));
  auto far = DisjointRanges::FromIntervals({{20, 25}}, 30);
  EXPECT_EQ(Meet(Element(*a), Element(*far)), std::nullopt);
}

std::shared_ptr<const Schema> ProtoSchema() {
  SchemaBuilder b;
  EXPECT_TRUE(b.AddField({"proto", FieldKind::kValueSet, 0, 256,
                          {{"ICMP", 1}, {"TCP", 6}, {"UDP", 17}}})
                  .ok());
  EXPECT_TRUE(b.NoteValue(0, 17).ok());
  EXPECT_TRUE(b.NoteValue(0, 6).ok());
  return MustFreeze(b);
}

TEST(ValueSetTest, OtherBitCoversUnnamedValues) {
  auto schema = ProtoSchema();
  const auto& universe = schema->field(0).universe();
  EXPECT_EQ(universe->bit_count(), 3);
  absl::StatusOr<ValueSet> udp = ValueSet::Of(universe, {17});
  ASSERT_TRUE(udp.ok());
  EXPECT_EQ(udp->Cardinality(), 1);
  std::optional<ValueSet> not_udp = udp->Complement();
  ASSERT_TRUE(not_udp.has_value());
  EXPECT_EQ(not_udp->Cardinality(), 255);
  EXPECT_TRUE(not_udp->ContainsValue(1));
  EXPECT_TRUE(not_udp->ContainsValue(6));
  EXPECT_FALSE(not_udp->ContainsValue(17));
  EXPECT_EQ(Meet(Element(*udp), Element(*not_udp)), std::nullopt);
  EXPECT_FALSE(ValueSet::Of(universe, {1}).ok());
}

TEST(OptionalValueTest, WildcardAndValue) {
  Element any(OptionalValue::Wildcard(4));
  Element two(OptionalValue::Of(4, 2));
  EXPECT_EQ(Cardinality(any), 4);
  EXPECT_EQ(Meet(any, two), two);
  EXPECT_EQ(Meet(two, Element(OptionalValue::Of(4, 1))), std::nullopt);
  EXPECT_FALSE(Complement(two).ok());
}

TEST(TupleTest, MeetIsPointwise) {
  auto schema = MixedSchema();
  std::mt19937_64 rng(1);
  Element a = RandomElement(rng, *schema);
  EXPECT_EQ(Meet(a, Top(*schema)), a);
  EXPECT_TRUE(SubsetOf(a, Top(*schema)));
  EXPECT_EQ(Cardinality(Top(*schema)), schema->UniverseSize());
}

TEST(CheckedAlgebraTest, RejectsShapeMismatch) {
  EXPECT_FALSE(Intersect(T("1*"), T("1*1")).ok());
  EXPECT_FALSE(IsSubset(T("1*"), Element(Range(0, 1, 2))).ok());
  EXPECT_FALSE(
      Intersect(Element(Range(0, 1, 2)), Element(Range(0, 1, 3))).ok());
  absl::StatusOr<std::optional<Element>> ok = Intersect(T("1*"), T("*0"));
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(*ok, T("10"));
}

TEST(ValidateTest, SchemaShape) {
  auto schema = MixedSchema();
  EXPECT_TRUE(Validate(*schema, Top(*schema)).ok());
  EXPECT_FALSE(Validate(*schema, T("1*1")).ok());
}

// Algebraic laws checked against explicit header sets.
class ElementLawsTest : public ::testing::TestWithParam<int> {};

std::shared_ptr<const Schema> LawSchema(int which) {
  SchemaBuilder b;
  switch (which) {
    case 0:
      EXPECT_TRUE(b.AddField({"f", FieldKind::kPrefix, 6, 0, {}}).ok());
      break;
    case 1:
      EXPECT_TRUE(b.AddField({"f", FieldKind::kTbv, 6, 0, {}}).ok());
      break;
    case 2:
      EXPECT_TRUE(b.AddField({"f", FieldKind::kRange, 0, 20, {}}).ok());
      break;
    case 3:
      EXPECT_TRUE(
          b.AddField({"f", FieldKind::kDisjointRanges, 0, 20, {}}).ok());
      break;
    case 4:
      EXPECT_TRUE(b.AddField({"f", FieldKind::kValueSet, 0, 9, {}}).ok());
      for (uint64_t v : {0, 2, 5, 7}) EXPECT_TRUE(b.NoteValue(0, v).ok());
      break;
    case 5:
      EXPECT_TRUE(b.AddField({"f", FieldKind::kOptional, 0, 5, {}}).ok());
      break;
    default:
      return MixedSchema();
  }
  return MustFreeze(b);
}

std::vector<bool> HeaderBits(const Schema& schema, const Element& e) {
  std::vector<bool> bits;
  EXPECT_TRUE(ForEachHeader(schema, [&](const Header& h) {
                bits.push_back(ContainsHeader(e, h));
              }).ok());
  return bits;
}

TEST_P(ElementLawsTest, AgreeWithHeaderSets) {
  auto schema = LawSchema(GetParam());
  std::mt19937_64 rng(100 + GetParam());
  for (int i = 0; i < 150; ++i) {
    Element a = RandomElement(rng, *schema);
    Element b = RandomElement(rng, *schema);
    std::vector<bool> ha = HeaderBits(*schema, a);
    std::vector<bool> hb = HeaderBits(*schema, b);
    std::vector<bool> both(ha.size());
    bool subset = true;
    bool any = false;
    uint64_t count_a = 0;
    for (size_t k = 0; k < ha.size(); ++k) {
      both[k] = ha[k] && hb[k];
      any = any || both[k];
      if (ha[k] && !hb[k]) subset = false;
      count_a += ha[k];
    }
    ASSERT_EQ(Cardinality(a), count_a) << ToString(a);
    ASSERT_EQ(SubsetOf(a, b), subset) << ToString(a) << " " << ToString(b);
    std::optional<Element> m = Meet(a, b);
    ASSERT_EQ(m.has_value(), any) << ToString(a) << " " << ToString(b);
    if (m.has_value()) {
      ASSERT_EQ(HeaderBits(*schema, *m), both);
      ASSERT_EQ(Meet(b, a), m);
      ASSERT_TRUE(Validate(*schema, *m).ok());
    }
    ASSERT_EQ(CanonicalKey(a) == CanonicalKey(b), ha == hb);
    ASSERT_EQ(a == b, ha == hb);
    absl::StatusOr<std::optional<Element>> c = Complement(a);
    if (c.ok()) {
      std::vector<bool> want(ha.size());
      bool none = true;
      for (size_t k = 0; k < ha.size(); ++k) {
        want[k] = !ha[k];
        none = none && !want[k];
      }
      ASSERT_EQ(c->has_value(), !none);
      if (c->has_value()) ASSERT_EQ(HeaderBits(*schema, **c), want);
    }
  }
}

TEST_P(ElementLawsTest, PartialOrderAndMeet) {
  auto schema = LawSchema(GetParam());
  std::mt19937_64 rng(200 + GetParam());
  for (int i = 0; i < 300; ++i) {
    Element a = RandomElement(rng, *schema);
    Element b = RandomElement(rng, *schema);
    Element c = RandomElement(rng, *schema);
    ASSERT_TRUE(SubsetOf(a, a));
    ASSERT_EQ(Meet(a, a), a);
    if (SubsetOf(a, b) && SubsetOf(b, a)) {
      ASSERT_EQ(CanonicalKey(a), CanonicalKey(b));
    }
    if (SubsetOf(a, b) && SubsetOf(b, c)) ASSERT_TRUE(SubsetOf(a, c));
    std::optional<Element> ab = Meet(a, b);
    if (ab.has_value()) {
      ASSERT_TRUE(SubsetOf(*ab, a) && SubsetOf(*ab, b));
      // Greatest lower bound.
      if (SubsetOf(c, a) && SubsetOf(c, b)) ASSERT_TRUE(SubsetOf(c, *ab));
      std::optional<Element> bc = Meet(b, c);
      std::optional<Element> left = Meet(*ab, c);
      std::optional<Element> right =
          bc.has_value() ? Meet(a, *bc) : std::nullopt;
      ASSERT_EQ(left, right);
    }
    ASSERT_EQ(SubsetOf(a, b), Meet(a, b) == a);
    ASSERT_TRUE(SubsetOf(a, Top(*schema)));
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, ElementLawsTest,
                         ::testing::Values(0, 1, 2, 3, 4, 5, 6));

}  // namespace
}  // namespace pec
