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

#ifndef PEC_INGEST_H_
#define PEC_INGEST_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pec/analysis.h"
#include "pec/element.h"
#include "pec/element_text.h"
#include "pec/query.h"
#include "pec/schema.h"

namespace pec {

// Input formats are documented in docs/formats.md.

absl::StatusOr<std::string> ReadFile(const std::string& path);

// Unique match elements in first-seen order.
struct Dataset {
  std::shared_ptr<const Schema> schema;
  std::vector<Element> elements;
  size_t duplicates = 0;
};

// Schema declarations only; value universes are fixed by Freeze() after every
// input has been scanned.
absl::StatusOr<SchemaBuilder> ParseSchemaBuilder(absl::string_view json);
// Declarations frozen without any scanned values.
absl::StatusOr<std::shared_ptr<const Schema>> ParseSchema(
    absl::string_view json);

// One CIDR per line; '#' starts a comment. The schema has a single prefix
// field "dst" of the given width.
absl::StatusOr<Dataset> ParsePrefixList(absl::string_view text,
                                        uint32_t width = 32);
// One ternary string per line. A width of 0 takes the width of the first
// vector. The schema has a single tbv field "bits".
absl::StatusOr<Dataset> ParseTbvList(absl::string_view text,
                                     uint32_t width = 0);

std::string SerializePrefixList(const Dataset& dataset);
std::string SerializeTbvList(const Dataset& dataset);

// Rule and topology documents before binding against a schema.
struct RawRule {
  std::string name;
  int64_t priority = 0;
  FieldMap match;
  std::string action;
};
struct RawDevice {
  std::string name;
  std::vector<RawRule> rules;
  std::vector<std::string> external_ports;
};
struct RawLink {
  std::string from;
  std::string port;
  std::string to;
  std::optional<QueryExpr> filter;
  std::string filter_text;
};
struct RawTopology {
  std::vector<RawDevice> devices;
  std::vector<RawLink> links;
};

// A rule table document is one device named "table" whose forwarded-to ports
// are all external.
absl::StatusOr<RawTopology> ParseRuleTableJson(absl::string_view json);
absl::StatusOr<RawTopology> ParseTopologyJson(absl::string_view json);

// First pass: records set-field values used anywhere in the document.
absl::Status NoteTopologyValues(SchemaBuilder& builder,
                                const RawTopology& raw);
// Second pass.
absl::StatusOr<Topology> BindTopology(const RawTopology& raw,
                                      const Schema& schema);

// Rule matches of all devices, deduplicated.
Dataset MatchDataset(const Topology& topology,
                     std::shared_ptr<const Schema> schema);

// Rule table document for a single device; re-parsing it yields the same
// elements.
std::string SerializeRuleTable(const Schema& schema, const RuleTable& table);

// Everything a command needs: the frozen schema, the bound topology and its
// rule names.
struct Workspace {
  std::shared_ptr<const Schema> schema;
  Topology topology;
  NamedElements names;
};

// Runs both passes over a schema document, a rule table or topology document
// and any query expressions.
absl::StatusOr<Workspace> LoadWorkspace(
    absl::string_view schema_json, const RawTopology& raw,
    const std::vector<const QueryExpr*>& queries = {});

}  // namespace pec

#endif  // PEC_INGEST_H_
