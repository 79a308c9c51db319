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

#ifndef PEC_TESTS_TEST_UTIL_H_
#define PEC_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "pec/element.h"
#include "pec/element_text.h"
#include "pec/ingest.h"
#include "pec/lattice.h"
#include "pec/schema.h"

namespace pec::testing {

inline std::string TestdataPath(const std::string& name) {
  return std::string(PEC_TESTDATA_DIR) + "/" + name;
}

inline std::string ReadTestdata(const std::string& name) {
  absl::StatusOr<std::string> text = ReadFile(TestdataPath(name));
  EXPECT_TRUE(text.ok()) << text.status();
  return text.ok() ? *text : std::string();
}

inline std::shared_ptr<const Schema> MustFreeze(const SchemaBuilder& b) {
  absl::StatusOr<std::shared_ptr<const Schema>> schema = b.Freeze();
  EXPECT_TRUE(schema.ok()) << schema.status();
  return *schema;
}

inline std::shared_ptr<const Schema> TbvSchema(uint32_t width) {
  SchemaBuilder b;
  EXPECT_TRUE(b.AddField({"bits", FieldKind::kTbv, width, 0, {}}).ok());
  return MustFreeze(b);
}

inline std::shared_ptr<const Schema> PrefixSchema(uint32_t width) {
  SchemaBuilder b;
  EXPECT_TRUE(b.AddField({"dst", FieldKind::kPrefix, width, 0, {}}).ok());
  return MustFreeze(b);
}

// src/dst IPv4 prefixes and a protocol set whose universe holds UDP only.
inline std::shared_ptr<const Schema> FirewallSchema() {
  SchemaBuilder b;
  EXPECT_TRUE(b.AddField({"src", FieldKind::kPrefix, 32, 0, {}}).ok());
  EXPECT_TRUE(b.AddField({"dst", FieldKind::kPrefix, 32, 0, {}}).ok());
  EXPECT_TRUE(b.AddField({"proto", FieldKind::kValueSet, 0, 256,
                          {{"ICMP", 1}, {"TCP", 6}, {"UDP", 17}}})
                  .ok());
  EXPECT_TRUE(b.NoteValue(2, 17).ok());
  return MustFreeze(b);
}

inline Element Match(const Schema& schema, const FieldMap& map) {
  absl::StatusOr<Element> e = ParseMatch(schema, map);
  EXPECT_TRUE(e.ok()) << e.status();
  return *e;
}

inline Element T(absl::string_view digits) {
  absl::StatusOr<Tbv> t = Tbv::Parse(digits);
  EXPECT_TRUE(t.ok()) << t.status();
  return Element(*t);
}

inline NodeId MustInsert(Lattice& lattice, const Element& e) {
  absl::StatusOr<NodeId> id = lattice.Insert(e);
  EXPECT_TRUE(id.ok()) << id.status();
  return id.ok() ? *id : Lattice::kRoot;
}

inline NodeId NodeOf(const Lattice& lattice, const Element& e) {
  std::optional<NodeId> id = lattice.Find(e);
  EXPECT_TRUE(id.has_value()) << ToString(e);
  return id.value_or(Lattice::kRoot);
}

inline BigInt Pec(const Lattice& lattice, NodeId id) {
  absl::StatusOr<BigInt> c = lattice.PecCardinality(id);
  EXPECT_TRUE(c.ok()) << c.status();
  return c.ok() ? *c : BigInt(-1);
}

// Hasse edges as element texts, for order-independent comparison.
inline std::set<std::pair<std::string, std::string>> Edges(
    const Lattice& lattice) {
  std::set<std::pair<std::string, std::string>> edges;
  for (NodeId id = 0; id < lattice.size(); ++id) {
    for (NodeId c : lattice.node(id).children) {
      edges.emplace(ToString(lattice.node(id).elem),
                    ToString(lattice.node(c).elem));
    }
  }
  return edges;
}

// Multiset of (canonical key, PEC cardinality) over all nodes.
inline std::multiset<std::pair<std::string, std::string>> KeyedPecs(
    const Lattice& lattice) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (NodeId id = 0; id < lattice.size(); ++id) {
    out.emplace(CanonicalKey(lattice.node(id).elem),
                ToString(lattice.node(id).cardinality));
  }
  return out;
}

// Hand-rolled generators. Modulo mapping keeps sequences identical across
// standard libraries.
inline uint64_t Draw(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

inline Tbv RandomTbv(std::mt19937_64& rng, uint32_t width,
                     uint32_t star_percent) {
  std::string digits(width, '*');
  for (char& d : digits) {
    if (Draw(rng, 100) >= star_percent) d = Draw(rng, 2) ? '1' : '0';
  }
  return *Tbv::Parse(digits);
}

inline std::vector<Element> RandomTbvs(std::mt19937_64& rng, uint32_t width,
                                       size_t count, uint32_t star_percent) {
  std::vector<Element> out;
  for (size_t i = 0; i < count; ++i) {
    out.emplace_back(RandomTbv(rng, width, star_percent));
  }
  return out;
}

// Prefix x range x value set x optional x disjoint ranges, small enough to
// enumerate (16 * 7 * 6 * 3 * 5 headers). The set field has values 1, 3, 4
// noted plus the "other" bit.
inline std::shared_ptr<const Schema> MixedSchema() {
  SchemaBuilder b;
  EXPECT_TRUE(b.AddField({"p", FieldKind::kPrefix, 4, 0, {}}).ok());
  EXPECT_TRUE(b.AddField({"r", FieldKind::kRange, 0, 7, {}}).ok());
  EXPECT_TRUE(b.AddField({"s", FieldKind::kValueSet, 0, 6, {}}).ok());
  EXPECT_TRUE(b.AddField({"o", FieldKind::kOptional, 0, 3, {}}).ok());
  EXPECT_TRUE(b.AddField({"d", FieldKind::kDisjointRanges, 0, 5, {}}).ok());
  for (uint64_t v : {1, 3, 4}) EXPECT_TRUE(b.NoteValue(2, v).ok());
  return MustFreeze(b);
}

inline Element RandomFieldElement(std::mt19937_64& rng, const Field& field) {
  switch (field.kind()) {
    case FieldKind::kPrefix: {
      const uint32_t w = field.width();
      const uint32_t len = static_cast<uint32_t>(Draw(rng, w + 1));
      uint128 address = (uint128{rng()} << 64) | rng();
      return Element(IpPrefix(address, len, w));
    }
    case FieldKind::kTbv:
      return Element(RandomTbv(rng, field.width(), 40));
    case FieldKind::kRange: {
      uint64_t lo = Draw(rng, field.bound());
      uint64_t hi = lo + 1 + Draw(rng, field.bound() - lo);
      return Element(Range(lo, hi, field.bound()));
    }
    case FieldKind::kDisjointRanges:
      while (true) {
        std::vector<Interval> intervals;
        const uint64_t n = 1 + Draw(rng, 3);
        for (uint64_t i = 0; i < n; ++i) {
          uint64_t lo = Draw(rng, field.bound());
          intervals.push_back({lo, lo + Draw(rng, field.bound() - lo + 1)});
        }
        auto d = DisjointRanges::FromIntervals(intervals, field.bound());
        if (d.has_value()) return Element(*d);
      }
    case FieldKind::kValueSet:
      while (true) {
        ValueSet::Words bits(
            ValueSet::WordCount(field.universe()->bit_count()), 0);
        for (size_t i = 0; i < field.universe()->bit_count(); ++i) {
          if (Draw(rng, 2)) bits[i / 64] |= uint64_t{1} << (i % 64);
        }
        auto s = ValueSet::FromBits(field.universe(), bits);
        if (s.has_value()) return Element(*s);
      }
    case FieldKind::kOptional:
      if (Draw(rng, 3) == 0) return Element(OptionalValue::Wildcard(field.bound()));
      return Element(OptionalValue::Of(field.bound(), Draw(rng, field.bound())));
  }
  return FieldTop(field);
}

inline Element RandomElement(std::mt19937_64& rng, const Schema& schema) {
  if (!schema.is_tuple()) return RandomFieldElement(rng, schema.field(0));
  TupleElement t;
  for (const Field& f : schema.fields()) {
    // Keep some coordinates wide so that random tuples overlap.
    t.coords.push_back(Draw(rng, 3) == 0 ? FieldTop(f)
                                         : RandomFieldElement(rng, f));
  }
  return Element(std::move(t));
}

}  // namespace pec::testing

#endif  // PEC_TESTS_TEST_UTIL_H_
