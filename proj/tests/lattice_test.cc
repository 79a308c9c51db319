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

#include "pec/lattice.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "pec/element.h"
#include "property_checks.h"
#include "test_util.h"

namespace pec {
namespace {

using ::pec::testing::CheckConservation;
using ::pec::testing::CheckPartition;
using ::pec::testing::CheckShape;
using ::pec::testing::Edges;
using ::pec::testing::FirewallSchema;
using ::pec::testing::KeyedPecs;
using ::pec::testing::Match;
using ::pec::testing::MustInsert;
using ::pec::testing::NodeOf;
using ::pec::testing::Pec;
using ::pec::testing::PrefixSchema;
using ::pec::testing::RandomTbvs;
using ::pec::testing::T;
using ::pec::testing::TbvSchema;

std::string S(const Element& e) { return ToString(e); }

TEST(LatticeTest, FreshLatticeHasOnlyTheRoot) {
  Lattice lattice(TbvSchema(3));
  EXPECT_EQ(lattice.size(), 1);
  EXPECT_EQ(Pec(lattice, Lattice::kRoot), 8);
  absl::StatusOr<PecReport> report = lattice.Report();
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->pecs, 1);
  EXPECT_EQ(report->empty_pecs, 0);
}

TEST(LatticeTest, InsertingTopIsANoOp) {
  auto schema = TbvSchema(3);
  Lattice lattice(schema);
  EXPECT_EQ(MustInsert(lattice, Top(*schema)), Lattice::kRoot);
  EXPECT_EQ(lattice.size(), 1);
}

TEST(LatticeTest, ReinsertReturnsExistingNode) {
  Lattice lattice(TbvSchema(3));
  NodeId a = MustInsert(lattice, T("1*1"));
  EXPECT_EQ(MustInsert(lattice, T("1*1")), a);
  EXPECT_EQ(lattice.size(), 2);
  EXPECT_EQ(lattice.insertions(), 2);
}

TEST(LatticeTest, FindOrCreateNodeIsHashConsed) {
  Lattice lattice(TbvSchema(3));
  auto [a, created_a] = lattice.FindOrCreateNode(T("1*1"));
  EXPECT_TRUE(created_a);
  auto [b, created_b] = lattice.FindOrCreateNode(T("1*1"));
  EXPECT_FALSE(created_b);
  EXPECT_EQ(a, b);
}

TEST(LatticeTest, RejectsElementsOfAnotherSchema) {
  Lattice lattice(TbvSchema(3));
  EXPECT_FALSE(lattice.Insert(T("1*11")).ok());
  EXPECT_EQ(lattice.insertions(), 0);
}

TEST(LatticeTest, LeafCardinalityIsElementSize) {
  Lattice lattice(TbvSchema(5));
  NodeId leaf = MustInsert(lattice, T("1**0*"));
  EXPECT_EQ(Pec(lattice, leaf), 8);
  EXPECT_EQ(Pec(lattice, Lattice::kRoot), 24);
}

TEST(LatticeTest, ThreeRuleFirewall) {
  auto schema = FirewallSchema();
  const Element b = Match(
      *schema, {{"src", "0.0.0.4/30"}, {"dst", "0.0.0.0/28"}, {"proto", "!UDP"}});
  const Element c = Match(*schema, {{"src", "0.0.0.4/30"}, {"dst", "0.0.0.12/30"}});
  const Element d = Match(
      *schema, {{"src", "0.0.0.0/29"}, {"dst", "0.0.0.12/30"}, {"proto", "UDP"}});
  const Element e = Match(
      *schema, {{"src", "0.0.0.4/30"}, {"dst", "0.0.0.12/30"}, {"proto", "!UDP"}});
  const Element f = Match(
      *schema, {{"src", "0.0.0.4/30"}, {"dst", "0.0.0.12/30"}, {"proto", "UDP"}});
  const Element a = Top(*schema);

  Lattice lattice(schema);
  MustInsert(lattice, b);
  MustInsert(lattice, c);
  MustInsert(lattice, d);
  EXPECT_EQ(lattice.size(), 6);
  std::set<std::pair<std::string, std::string>> expected = {
      {S(a), S(b)}, {S(a), S(c)}, {S(a), S(d)}, {S(b), S(e)},
      {S(c), S(e)}, {S(c), S(f)}, {S(d), S(f)}};
  EXPECT_EQ(Edges(lattice), expected);
  EXPECT_EQ(Pec(lattice, NodeOf(lattice, c)), 0);
  EXPECT_EQ(Pec(lattice, NodeOf(lattice, e)), 4 * 4 * 255);
  EXPECT_EQ(Pec(lattice, NodeOf(lattice, f)), 4 * 4);
  EXPECT_EQ(CheckConservation(lattice), "");
  EXPECT_TRUE(lattice.CheckInvariants().ok());

  absl::StatusOr<PecReport> report = lattice.Report();
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->pecs, 6);
  EXPECT_EQ(report->empty_pecs, 1);
  EXPECT_EQ(report->atomic_predicates, 5);

  std::vector<NodeId> below_c = lattice.Subtree(NodeOf(lattice, c));
  std::vector<NodeId> want = {NodeOf(lattice, c), NodeOf(lattice, e),
                              NodeOf(lattice, f)};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(below_c, want);
  EXPECT_EQ(lattice.Subtree(Lattice::kRoot).size(), 6);
}

struct IcmpFixture {
  std::shared_ptr<const Schema> schema;
  Element a, b, c, d, e, f, g, h;
};

IcmpFixture MakeIcmpFixture() {
  SchemaBuilder builder;
  EXPECT_TRUE(builder.AddField({"dst", FieldKind::kPrefix, 32, 0, {}}).ok());
  EXPECT_TRUE(
      builder.AddField({"proto", FieldKind::kValueSet, 0, 256, {{"ICMP", 1}}})
          .ok());
  EXPECT_TRUE(builder.NoteValue(1, 1).ok());
  auto schema = testing::MustFreeze(builder);
  auto m = [&](const char* dst, const char* proto) {
    return Match(*schema, {{"dst", dst}, {"proto", proto}});
  };
  return IcmpFixture{schema,
                     Top(*schema),
                     m("210.4.214.0/23", "ANY"),
                     m("210.4.214.0/24", "ANY"),
                     m("210.4.215.0/24", "ANY"),
                     m("210.4.214.0/24", "ICMP"),
                     m("0.0.0.0/0", "ICMP"),
                     m("210.4.214.0/23", "ICMP"),
                     m("210.4.215.0/24", "ICMP")};
}

TEST(LatticeTest, InsertionCreatesForcedMeets) {
  IcmpFixture x = MakeIcmpFixture();
  Lattice lattice(x.schema, Lattice::Mode::kAmortized);
  for (const Element* el : {&x.b, &x.c, &x.d, &x.e}) MustInsert(lattice, *el);
  lattice.Settle();
  EXPECT_EQ(Edges(lattice),
            (std::set<std::pair<std::string, std::string>>{
                {S(x.a), S(x.b)}, {S(x.b), S(x.c)}, {S(x.b), S(x.d)},
                {S(x.c), S(x.e)}}));

  MustInsert(lattice, x.f);
  EXPECT_EQ(lattice.size(), 8);
  std::set<std::string> modified;
  for (NodeId id : lattice.modified_nodes()) {
    modified.insert(S(lattice.node(id).elem));
  }
  EXPECT_EQ(modified, (std::set<std::string>{S(x.a), S(x.b), S(x.d), S(x.f),
                                             S(x.g), S(x.h)}));
  EXPECT_FALSE(lattice.PecCardinality(Lattice::kRoot).ok());
  lattice.Settle();
  EXPECT_EQ(Edges(lattice),
            (std::set<std::pair<std::string, std::string>>{
                {S(x.a), S(x.b)}, {S(x.a), S(x.f)}, {S(x.b), S(x.c)},
                {S(x.b), S(x.d)}, {S(x.b), S(x.g)}, {S(x.f), S(x.g)},
                {S(x.c), S(x.e)}, {S(x.d), S(x.h)}, {S(x.g), S(x.e)},
                {S(x.g), S(x.h)}}));
  EXPECT_EQ(Pec(lattice, NodeOf(lattice, x.b)), 0);
  EXPECT_EQ(CheckConservation(lattice), "");
  EXPECT_TRUE(lattice.CheckInvariants().ok());
}

TEST(LatticeTest, AmortizedQueriesFailUntilSettled) {
  Lattice lattice(TbvSchema(3), Lattice::Mode::kAmortized);
  NodeId n = MustInsert(lattice, T("11*"));
  EXPECT_EQ(lattice.IsEmptyPec(n).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(lattice.Report().ok());
  lattice.Settle();
  EXPECT_TRUE(lattice.settled());
  EXPECT_EQ(Pec(lattice, n), 2);
}

TEST(LatticeTest, RunningDnfLattice) {
  Lattice lattice(TbvSchema(3));
  for (const char* t : {"1*1", "11*", "*10"}) MustInsert(lattice, T(t));
  EXPECT_EQ(Edges(lattice),
            (std::set<std::pair<std::string, std::string>>{
                {"***", "1*1"}, {"***", "11*"}, {"***", "*10"},
                {"1*1", "111"}, {"11*", "111"}, {"11*", "110"},
                {"*10", "110"}}));
  EXPECT_EQ(Pec(lattice, Lattice::kRoot), 4);
  EXPECT_EQ(Pec(lattice, NodeOf(lattice, T("1*1"))), 1);
  EXPECT_EQ(Pec(lattice, NodeOf(lattice, T("11*"))), 0);
  EXPECT_EQ(Pec(lattice, NodeOf(lattice, T("*10"))), 1);
  EXPECT_EQ(Pec(lattice, NodeOf(lattice, T("111"))), 1);
  EXPECT_EQ(Pec(lattice, NodeOf(lattice, T("110"))), 1);
  absl::StatusOr<PecReport> report = lattice.Report();
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->pecs, 6);
  EXPECT_EQ(report->empty_pecs, 1);
}

TEST(LatticeTest, NestedPrefixesLeaveCoveringPrefixEmpty) {
  auto schema = PrefixSchema(32);
  Lattice lattice(schema);
  auto p = [&](const char* text) { return Match(*schema, {{"dst", text}}); };
  NodeId x = MustInsert(lattice, p("10.57.0.0/19"));
  NodeId y = MustInsert(lattice, p("10.57.32.0/19"));
  NodeId z = MustInsert(lattice, p("10.57.0.0/18"));
  EXPECT_EQ(Pec(lattice, z), 0);
  EXPECT_EQ(Pec(lattice, x), BigInt(1) << 13);
  EXPECT_EQ(Pec(lattice, y), BigInt(1) << 13);
  EXPECT_EQ(*lattice.IsEmptyPec(z), true);
  EXPECT_EQ(Pec(lattice, Lattice::kRoot), (BigInt(1) << 32) - (BigInt(1) << 14));
}

TEST(LatticeTest, DumpListsEveryNode) {
  Lattice lattice(TbvSchema(3));
  MustInsert(lattice, T("1*1"));
  absl::StatusOr<PecReport> report = lattice.Report(/*dump_nodes=*/true);
  ASSERT_TRUE(report.ok());
  ASSERT_EQ(report->nodes.size(), 2);
  EXPECT_EQ(report->nodes[0].element, "ANY");
  EXPECT_EQ(report->nodes[1].element, "bits=1*1");
  EXPECT_EQ(report->nodes[0].children, std::vector<NodeId>{1});
}

// Random tbv lattices checked against header enumeration.
TEST(LatticePropertyTest, RandomTbvLatticesMatchEnumeration) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 60; ++round) {
    const uint32_t width = 3 + static_cast<uint32_t>(rng() % 6);
    const size_t count = 1 + rng() % 14;
    std::vector<Element> elements =
        RandomTbvs(rng, width, count, 30 + static_cast<uint32_t>(rng() % 50));
    Lattice lattice(TbvSchema(width));
    for (const Element& e : elements) MustInsert(lattice, e);
    ASSERT_EQ(CheckShape(lattice), "") << "round " << round;
    ASSERT_EQ(CheckPartition(lattice, elements), "") << "round " << round;
    ASSERT_EQ(CheckConservation(lattice), "");
    ASSERT_TRUE(lattice.CheckInvariants().ok());
  }
}

TEST(LatticePropertyTest, InsertionOrderDoesNotMatter) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 40; ++round) {
    const uint32_t width = 4 + static_cast<uint32_t>(rng() % 5);
    std::vector<Element> elements = RandomTbvs(rng, width, 12, 50);
    Lattice first(TbvSchema(width));
    for (const Element& e : elements) MustInsert(first, e);
    for (int shuffle = 0; shuffle < 4; ++shuffle) {
      std::shuffle(elements.begin(), elements.end(), rng);
      Lattice other(TbvSchema(width));
      for (const Element& e : elements) MustInsert(other, e);
      ASSERT_EQ(KeyedPecs(other), KeyedPecs(first));
      ASSERT_EQ(Edges(other), Edges(first));
    }
  }
}

TEST(LatticePropertyTest, AmortizedEqualsEager) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 30; ++round) {
    std::vector<Element> elements = RandomTbvs(rng, 7, 15, 45);
    Lattice eager(TbvSchema(7));
    Lattice lazy(TbvSchema(7), Lattice::Mode::kAmortized);
    for (const Element& e : elements) {
      MustInsert(eager, e);
      MustInsert(lazy, e);
      if (rng() % 4 == 0) lazy.Settle();
    }
    lazy.Settle();
    ASSERT_EQ(KeyedPecs(lazy), KeyedPecs(eager));
  }
}

// Mixed-kind tuples: prefix x range x value set x optional.
TEST(LatticePropertyTest, RandomTupleLatticesMatchEnumeration) {
  auto schema = testing::MixedSchema();
  const char* prefixes[] = {"*", "8/1", "0/1", "12/2", "4/2", "9/4", "2/3"};
  const char* ranges[] = {"*", "[0:3)", "[2:7)", "[1:5)", "4", "[5:7)"};
  const char* sets[] = {"*", "1", "{1,3}", "!{4}", "!{1,3}", "{3,4}"};
  const char* optionals[] = {"*", "*", "0", "1", "2"};
  const char* disjoint[] = {"*", "{[0:1),[3:5)}", "!{[1:2)}", "[2:4)", "4"};
  std::mt19937_64 rng(3);
  auto pick = [&rng](const auto& options) {
    return options[rng() % std::size(options)];
  };
  for (int round = 0; round < 25; ++round) {
    std::vector<Element> elements;
    const size_t count = 2 + rng() % 8;
    for (size_t i = 0; i < count; ++i) {
      elements.push_back(Match(*schema, {{"p", pick(prefixes)},
                                         {"r", pick(ranges)},
                                         {"s", pick(sets)},
                                         {"o", pick(optionals)},
                                         {"d", pick(disjoint)}}));
    }
    Lattice lattice(schema);
    for (const Element& e : elements) MustInsert(lattice, e);
    ASSERT_EQ(CheckShape(lattice), "") << "round " << round;
    ASSERT_EQ(CheckPartition(lattice, elements), "") << "round " << round;
  }
}

}  // namespace
}  // namespace pec
