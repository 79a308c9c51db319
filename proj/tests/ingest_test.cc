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

#include "pec/ingest.h"

#include <random>
#include <string>

#include "gtest/gtest.h"
#include "pec/analysis.h"
#include "test_util.h"

namespace pec {
namespace {

using ::pec::testing::ReadTestdata;

TEST(SchemaJsonTest, ParsesAllFieldKinds) {
  absl::StatusOr<std::shared_ptr<const Schema>> schema = ParseSchema(R"({
    "fields": [
      {"name": "dst", "type": "prefix", "width": 32},
      {"name": "bits", "type": "tbv", "width": 8},
      {"name": "port", "type": "range", "max": 65536},
      {"name": "ports", "type": "disjoint_ranges", "bound": 1024},
      {"name": "proto", "type": "set", "domain": 256,
       "symbols": {"UDP": 17}},
      {"name": "vlan", "type": "optional", "domain": 4096}
    ]})");
  ASSERT_TRUE(schema.ok()) << schema.status();
  ASSERT_EQ((*schema)->size(), 6);
  EXPECT_EQ((*schema)->field(2).bound(), 65536);
  EXPECT_EQ((*schema)->field(4).kind(), FieldKind::kValueSet);
  EXPECT_EQ((*schema)->field(4).ResolveValue("UDP").value(), 17);
}

TEST(SchemaJsonTest, Errors) {
  for (const char* json : {
           "", "[]", R"({"fields": 3})",
           R"({"fields": [{"name": "a", "type": "bogus"}]})",
           R"({"fields": [{"type": "prefix", "width": 8}]})",
           R"({"fields": [{"name": "a", "type": "prefix", "width": 0}]})",
           R"({"fields": [{"name": "a", "type": "prefix", "width": 8},
                          {"name": "a", "type": "prefix", "width": 8}]})",
           R"({"fields": [{"name": "a", "type": "range"}]})",
       }) {
    EXPECT_FALSE(ParseSchema(json).ok()) << json;
  }
}

TEST(PrefixListTest, ParsesWithCommentsAndDuplicates) {
  absl::StatusOr<Dataset> d = ParsePrefixList(
      "# header\r\n10.0.0.0/8\r\n\n  10.0.0.0/8  # again\n192.168.1.7/24\n");
  ASSERT_TRUE(d.ok()) << d.status();
  ASSERT_EQ(d->elements.size(), 2);
  EXPECT_EQ(d->duplicates, 1);
  EXPECT_EQ(SerializePrefixList(*d), "10.0.0.0/8\n192.168.1.0/24\n");
}

TEST(PrefixListTest, ReportsLineNumbers) {
  absl::StatusOr<Dataset> d = ParsePrefixList("10.0.0.0/8\n\n10.0.0.0/40\n");
  ASSERT_FALSE(d.ok());
  EXPECT_NE(d.status().message().find("line 3"), std::string::npos)
      << d.status();
  EXPECT_FALSE(ParsePrefixList("ANY\n").ok());
}

TEST(PrefixListTest, Fixture) {
  absl::StatusOr<Dataset> d = ParsePrefixList(ReadTestdata("xyz/prefixes.txt"));
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(d->elements.size(), 3);
}

TEST(TbvListTest, InfersWidth) {
  absl::StatusOr<Dataset> d = ParseTbvList("1*1\n11*\n*10\n1x1\n");
  ASSERT_TRUE(d.ok()) << d.status();
  EXPECT_EQ(d->elements.size(), 3);
  EXPECT_EQ(d->duplicates, 1);
  EXPECT_EQ(SerializeTbvList(*d), "1*1\n11*\n*10\n");
  EXPECT_FALSE(ParseTbvList("1*1\n11\n").ok());
  EXPECT_FALSE(ParseTbvList("").ok());
  EXPECT_FALSE(ParseTbvList("1*1\n", 4).ok());
}

TEST(TbvListPropertyTest, SerializeRoundTrip) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const uint32_t width = 1 + static_cast<uint32_t>(rng() % 140);
    std::string text;
    for (const Element& e : testing::RandomTbvs(rng, width, 20, 50)) {
      text += e.as<Tbv>().ToString() + "\n";
    }
    absl::StatusOr<Dataset> d = ParseTbvList(text);
    ASSERT_TRUE(d.ok());
    absl::StatusOr<Dataset> again = ParseTbvList(SerializeTbvList(*d));
    ASSERT_TRUE(again.ok());
    ASSERT_EQ(again->elements, d->elements);
    ASSERT_EQ(again->duplicates, 0);
  }
}

TEST(RuleTableJsonTest, DefaultsAndValueForms) {
  absl::StatusOr<RawTopology> raw = ParseRuleTableJson(R"({"rules": [
    {"match": {"proto": [6, "UDP"], "dst": "10.0.0.0/8"}},
    {"name": "fwd", "priority": 9, "match": {"proto": 6},
     "action": "forward:eth1"}
  ]})");
  ASSERT_TRUE(raw.ok()) << raw.status();
  ASSERT_EQ(raw->devices.size(), 1);
  const RawDevice& d = raw->devices[0];
  EXPECT_EQ(d.name, "table");
  EXPECT_EQ(d.rules[0].name, "rule0");
  EXPECT_EQ(d.rules[0].priority, 0);
  EXPECT_EQ(d.rules[0].action, "drop");
  EXPECT_EQ(d.external_ports, std::vector<std::string>{"eth1"});

  absl::StatusOr<Workspace> ws =
      LoadWorkspace(ReadTestdata("fig1/schema.json"), *raw);
  ASSERT_TRUE(ws.ok()) << ws.status();
  const Rule& first = ws->topology.devices()[0].table.rules()[0];
  EXPECT_EQ(FormatElement(*ws->schema, first.match),
            "dst=10.0.0.0/8 proto={TCP,UDP}");
}

TEST(RuleTableJsonTest, Errors) {
  for (const char* json : {
           "{", R"({"rules": 1})", R"({"rules": [1]})",
           R"({"rules": [{"action": "flood"}]})",
           R"({"rules": [{"match": {"dst": true}}]})",
           R"({"rules": [{"match": {"dst": -1}}]})",
       }) {
    EXPECT_FALSE(ParseRuleTableJson(json).ok()) << json;
  }
  // Parses, but does not bind against the schema.
  absl::StatusOr<RawTopology> raw = ParseRuleTableJson(
      R"({"rules": [{"match": {"vlan": "3"}}]})");
  ASSERT_TRUE(raw.ok());
  EXPECT_FALSE(LoadWorkspace(ReadTestdata("fig1/schema.json"), *raw).ok());
  raw = ParseRuleTableJson(
      R"({"rules": [{"priority": 1}, {"priority": 1}]})");
  ASSERT_TRUE(raw.ok());
  EXPECT_FALSE(LoadWorkspace(ReadTestdata("fig1/schema.json"), *raw).ok());
}

TEST(RuleTableJsonTest, EmptyTable) {
  absl::StatusOr<RawTopology> raw =
      ParseRuleTableJson(ReadTestdata("empty_rules.json"));
  ASSERT_TRUE(raw.ok());
  absl::StatusOr<Workspace> ws =
      LoadWorkspace(ReadTestdata("xyz/schema.json"), *raw);
  ASSERT_TRUE(ws.ok());
  EXPECT_EQ(ws->topology.devices()[0].table.size(), 0);
}

TEST(RuleTableJsonTest, SerializeRoundTrip) {
  absl::StatusOr<RawTopology> raw =
      ParseRuleTableJson(ReadTestdata("fig1/rules.json"));
  ASSERT_TRUE(raw.ok());
  const std::string schema_json = ReadTestdata("fig1/schema.json");
  absl::StatusOr<Workspace> ws = LoadWorkspace(schema_json, *raw);
  ASSERT_TRUE(ws.ok());
  const RuleTable& table = ws->topology.devices()[0].table;
  std::string text = SerializeRuleTable(*ws->schema, table);
  absl::StatusOr<RawTopology> again = ParseRuleTableJson(text);
  ASSERT_TRUE(again.ok()) << again.status();
  absl::StatusOr<Workspace> ws2 = LoadWorkspace(schema_json, *again);
  ASSERT_TRUE(ws2.ok());
  const RuleTable& table2 = ws2->topology.devices()[0].table;
  ASSERT_EQ(table2.size(), table.size());
  for (size_t i = 0; i < table.size(); ++i) {
    EXPECT_EQ(table2.rules()[i].name, table.rules()[i].name);
    EXPECT_EQ(table2.rules()[i].priority, table.rules()[i].priority);
    EXPECT_EQ(table2.rules()[i].match, table.rules()[i].match);
    EXPECT_EQ(table2.rules()[i].action, table.rules()[i].action);
  }
}

TEST(TopologyJsonTest, LinkFiltersBindToRuleNames) {
  absl::StatusOr<RawTopology> raw = ParseTopologyJson(R"({
    "devices": [
      {"name": "a", "rules": [
         {"name": "web", "priority": 1, "match": {"dst": "10.0.0.0/8"},
          "action": "forward:p"}]},
      {"name": "b", "external_ports": ["out"], "rules": [
         {"name": "all", "priority": 1, "action": "forward:out"}]}
    ],
    "links": [{"from": "a", "port": "p", "to": "b",
               "filter": "web & !{proto=UDP}"}]
  })");
  ASSERT_TRUE(raw.ok()) << raw.status();
  absl::StatusOr<Workspace> ws =
      LoadWorkspace(ReadTestdata("reannz/schema.json"), *raw);
  ASSERT_TRUE(ws.ok()) << ws.status();
  const Link& link = ws->topology.links()[0];
  ASSERT_TRUE(link.filter.has_value());
  EXPECT_EQ(link.filter_text, "web & !{proto=UDP}");
  EXPECT_EQ(link.filter->Atoms().size(), 2);
  // UDP was only mentioned by the filter, yet it has its own bit.
  EXPECT_EQ(ws->schema->field(1).universe()->values(),
            std::vector<uint64_t>{17});
  EXPECT_TRUE(ws->names.contains("a.web"));
  EXPECT_TRUE(ws->names.contains("all"));
}

TEST(TopologyJsonTest, Errors) {
  EXPECT_FALSE(ParseTopologyJson(R"({"devices": [{"rules": []}]})").ok());
  EXPECT_FALSE(ParseTopologyJson(
                   R"({"links": [{"from": "a", "port": "p", "to": "b",
                                  "filter": "a &"}]})")
                   .ok());
  absl::StatusOr<RawTopology> raw = ParseTopologyJson(
      R"({"devices": [{"name": "a"}],
          "links": [{"from": "a", "port": "p", "to": "z"}]})");
  ASSERT_TRUE(raw.ok());
  EXPECT_FALSE(LoadWorkspace(ReadTestdata("xyz/schema.json"), *raw).ok());
  raw = ParseTopologyJson(
      R"({"devices": [{"name": "a"}],
          "links": [{"from": "a", "port": "p", "to": "a", "filter": "nope"}]})");
  ASSERT_TRUE(raw.ok());
  EXPECT_FALSE(LoadWorkspace(ReadTestdata("xyz/schema.json"), *raw).ok());
}

TEST(TopologyJsonTest, RejectsWildcardInterfaces) {
  EXPECT_FALSE(ParseTopologyJson(
                   R"({"links": [{"from": "a", "port": "eth+", "to": "b"}]})")
                   .ok());
  EXPECT_FALSE(ParseTopologyJson(
                   R"({"devices": [{"name": "a", "external_ports": ["ge*"]}]})")
                   .ok());
  // Actions are parsed when the topology is bound.
  absl::StatusOr<RawTopology> raw = ParseTopologyJson(
      R"({"devices": [{"name": "a", "rules": [
            {"priority": 1, "action": "forward:eth+"}]}]})");
  ASSERT_TRUE(raw.ok());
  EXPECT_FALSE(LoadWorkspace(ReadTestdata("xyz/schema.json"), *raw).ok());
}

TEST(MatchDatasetTest, Deduplicates) {
  absl::StatusOr<RawTopology> raw =
      ParseTopologyJson(ReadTestdata("xyz/topology.json"));
  ASSERT_TRUE(raw.ok());
  absl::StatusOr<Workspace> ws =
      LoadWorkspace(ReadTestdata("xyz/schema.json"), *raw);
  ASSERT_TRUE(ws.ok());
  Dataset d = MatchDataset(ws->topology, ws->schema);
  EXPECT_EQ(d.elements.size(), 3);
  EXPECT_EQ(d.duplicates, 3);
}

}  // namespace
}  // namespace pec
