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

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "json.hpp"

namespace pec {
namespace {

using Json = nlohmann::json;

absl::Status JsonError(absl::string_view what, absl::string_view detail) {
  return absl::InvalidArgumentError(absl::StrCat(what, ": ", detail));
}

absl::StatusOr<Json> ParseJson(absl::string_view text, absl::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    return JsonError(what, e.what());
  }
}

// Field values may be written as strings, numbers or arrays of either (a
// value set).
absl::StatusOr<std::string> ValueText(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_unsigned()) return absl::StrCat(value.get<uint64_t>());
  if (value.is_array()) {
    std::vector<std::string> items;
    for (const Json& item : value) {
      absl::StatusOr<std::string> text = ValueText(item);
      if (!text.ok()) return text;
      items.push_back(*std::move(text));
    }
    return absl::StrCat("{", absl::StrJoin(items, ","), "}");
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unsupported field value ", value.dump()));
}

absl::StatusOr<std::vector<RawRule>> ParseRules(const Json& rules,
                                                absl::string_view where) {
  if (!rules.is_array()) return JsonError(where, "\"rules\" must be an array");
  std::vector<RawRule> out;
  for (size_t i = 0; i < rules.size(); ++i) {
    const Json& r = rules[i];
    const std::string at = absl::StrCat(where, ", rule #", i);
    if (!r.is_object()) return JsonError(at, "must be an object");
    RawRule rule;
    try {
      rule.priority = r.value("priority", static_cast<int64_t>(i));
      rule.name = r.value("name", absl::StrCat("rule", rule.priority));
      rule.action = r.value("action", std::string("drop"));
    } catch (const Json::exception& e) {
      return JsonError(at, e.what());
    }
    if (r.contains("match")) {
      if (!r["match"].is_object()) return JsonError(at, "bad \"match\"");
      for (const auto& [field, value] : r["match"].items()) {
        absl::StatusOr<std::string> text = ValueText(value);
        if (!text.ok()) return JsonError(at, text.status().message());
        rule.match.emplace_back(field, *std::move(text));
      }
    }
    out.push_back(std::move(rule));
  }
  return out;
}

absl::StatusOr<std::vector<std::string>> ForwardPorts(
    const std::vector<RawRule>& rules) {
  std::vector<std::string> ports;
  for (const RawRule& r : rules) {
    absl::StatusOr<Action> action = Action::Parse(r.action);
    if (!action.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("rule '", r.name, "': ", action.status().message()));
    }
    if (action->kind == Action::Kind::kForward &&
        std::find(ports.begin(), ports.end(), action->port) == ports.end()) {
      ports.push_back(action->port);
    }
  }
  return ports;
}

// Splits into lines, dropping '\r', comments and blank lines. Yields
// (line number, content).
std::vector<std::pair<size_t, absl::string_view>> ContentLines(
    absl::string_view text) {
  std::vector<std::pair<size_t, absl::string_view>> lines;
  size_t number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++number;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (!line.empty()) lines.emplace_back(number, line);
  }
  return lines;
}

absl::Status LineError(size_t line, const absl::Status& status) {
  return absl::Status(status.code(),
                      absl::StrCat("line ", line, ": ", status.message()));
}

absl::StatusOr<std::shared_ptr<const Schema>> SingleFieldSchema(
    FieldDecl decl) {
  SchemaBuilder builder;
  if (absl::Status s = builder.AddField(std::move(decl)); !s.ok()) return s;
  return builder.Freeze();
}

void AddUnique(Dataset& dataset, absl::flat_hash_set<Element>& seen,
               Element elem) {
  if (seen.insert(elem).second) {
    dataset.elements.push_back(std::move(elem));
  } else {
    ++dataset.duplicates;
  }
}

}  // namespace

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

absl::StatusOr<SchemaBuilder> ParseSchemaBuilder(absl::string_view json) {
  absl::StatusOr<Json> doc = ParseJson(json, "schema");
  if (!doc.ok()) return doc.status();
  if (!doc->is_object() || !doc->contains("fields") ||
      !(*doc)["fields"].is_array()) {
    return JsonError("schema", "expected {\"fields\": [...]}");
  }
  SchemaBuilder builder;
  for (const Json& f : (*doc)["fields"]) {
    FieldDecl decl;
    try {
      decl.name = f.at("name").get<std::string>();
      const std::string type = f.at("type").get<std::string>();
      std::optional<FieldKind> kind = ParseFieldKind(type);
      if (!kind.has_value()) {
        return JsonError("schema",
                         absl::StrCat("field '", decl.name,
                                      "': unknown element type '", type, "'"));
      }
      decl.kind = *kind;
      decl.width = f.value("width", 0u);
      for (const char* key : {"domain", "max", "bound"}) {
        if (f.contains(key)) decl.bound = f[key].get<uint64_t>();
      }
      if (f.contains("symbols")) {
        for (const auto& [symbol, value] : f["symbols"].items()) {
          decl.symbols.emplace(symbol, value.get<uint64_t>());
        }
      }
    } catch (const Json::exception& e) {
      return JsonError("schema", e.what());
    }
    if (absl::Status s = builder.AddField(std::move(decl)); !s.ok()) {
      return JsonError("schema", s.message());
    }
  }
  return builder;
}

absl::StatusOr<std::shared_ptr<const Schema>> ParseSchema(
    absl::string_view json) {
  absl::StatusOr<SchemaBuilder> builder = ParseSchemaBuilder(json);
  if (!builder.ok()) return builder.status();
  return builder->Freeze();
}

absl::StatusOr<Dataset> ParsePrefixList(absl::string_view text,
                                        uint32_t width) {
  absl::StatusOr<std::shared_ptr<const Schema>> schema =
      SingleFieldSchema(FieldDecl{"dst", FieldKind::kPrefix, width, 0, {}});
  if (!schema.ok()) return schema.status();
  Dataset dataset{*schema, {}, 0};
  absl::flat_hash_set<Element> seen;
  for (const auto& [line, content] : ContentLines(text)) {
    if (content == "*" || content == "ANY" || content == "any") {
      return LineError(line, absl::InvalidArgumentError(
                                 "write 0.0.0.0/0 for the whole space"));
    }
    absl::StatusOr<Element> elem =
        ParseFieldValue((*schema)->field(0), content);
    if (!elem.ok()) return LineError(line, elem.status());
    AddUnique(dataset, seen, *std::move(elem));
  }
  return dataset;
}

absl::StatusOr<Dataset> ParseTbvList(absl::string_view text, uint32_t width) {
  auto lines = ContentLines(text);
  if (width == 0) {
    if (lines.empty()) {
      return absl::InvalidArgumentError(
          "cannot infer the width of an empty tbv list");
    }
    width = static_cast<uint32_t>(lines.front().second.size());
  }
  absl::StatusOr<std::shared_ptr<const Schema>> schema =
      SingleFieldSchema(FieldDecl{"bits", FieldKind::kTbv, width, 0, {}});
  if (!schema.ok()) return schema.status();
  Dataset dataset{*schema, {}, 0};
  absl::flat_hash_set<Element> seen;
  for (const auto& [line, content] : lines) {
    absl::StatusOr<Tbv> tbv = Tbv::Parse(content);
    if (!tbv.ok()) return LineError(line, tbv.status());
    if (tbv->width() != width) {
      return LineError(line, absl::InvalidArgumentError(absl::StrCat(
                                 "width ", tbv->width(), ", expected ", width)));
    }
    AddUnique(dataset, seen, Element(*std::move(tbv)));
  }
  return dataset;
}

std::string SerializePrefixList(const Dataset& dataset) {
  std::string out;
  for (const Element& e : dataset.elements) {
    absl::StrAppend(&out, ToString(e), "\n");
  }
  return out;
}

std::string SerializeTbvList(const Dataset& dataset) {
  std::string out;
  for (const Element& e : dataset.elements) {
    absl::StrAppend(&out, e.as<Tbv>().ToString(), "\n");
  }
  return out;
}

absl::StatusOr<RawTopology> ParseRuleTableJson(absl::string_view json) {
  absl::StatusOr<Json> doc = ParseJson(json, "rules");
  if (!doc.ok()) return doc.status();
  if (!doc->is_object() || !doc->contains("rules")) {
    return JsonError("rules", "expected {\"rules\": [...]}");
  }
  absl::StatusOr<std::vector<RawRule>> rules =
      ParseRules((*doc)["rules"], "rules");
  if (!rules.ok()) return rules.status();
  absl::StatusOr<std::vector<std::string>> ports = ForwardPorts(*rules);
  if (!ports.ok()) return ports.status();
  RawTopology raw;
  raw.devices.push_back(
      RawDevice{doc->value("device", std::string("table")), *std::move(rules),
                *std::move(ports)});
  return raw;
}

absl::StatusOr<RawTopology> ParseTopologyJson(absl::string_view json) {
  absl::StatusOr<Json> doc = ParseJson(json, "topology");
  if (!doc.ok()) return doc.status();
  if (!doc->is_object()) return JsonError("topology", "expected an object");
  RawTopology raw;
  try {
    for (const Json& d : doc->value("devices", Json::array())) {
      RawDevice device;
      device.name = d.at("name").get<std::string>();
      absl::StatusOr<std::vector<RawRule>> rules =
          ParseRules(d.value("rules", Json::array()),
                     absl::StrCat("device ", device.name));
      if (!rules.ok()) return rules.status();
      device.rules = *std::move(rules);
      for (const Json& port : d.value("external_ports", Json::array())) {
        absl::StatusOr<std::string> text = ValueText(port);
        if (!text.ok()) return text.status();
        if (absl::Status s = ValidatePortName(*text); !s.ok()) return s;
        device.external_ports.push_back(*std::move(text));
      }
      raw.devices.push_back(std::move(device));
    }
    for (const Json& l : doc->value("links", Json::array())) {
      RawLink link;
      link.from = l.at("from").get<std::string>();
      absl::StatusOr<std::string> port = ValueText(l.at("port"));
      if (!port.ok()) return port.status();
      if (absl::Status s = ValidatePortName(*port); !s.ok()) return s;
      link.port = *std::move(port);
      link.to = l.at("to").get<std::string>();
      if (l.contains("filter")) {
        link.filter_text = l["filter"].get<std::string>();
        absl::StatusOr<QueryExpr> filter = ParseQueryText(link.filter_text);
        if (!filter.ok()) {
          return JsonError(absl::StrCat("link ", link.from, ":", link.port),
                           filter.status().message());
        }
        link.filter = *std::move(filter);
      }
      raw.links.push_back(std::move(link));
    }
  } catch (const Json::exception& e) {
    return JsonError("topology", e.what());
  }
  return raw;
}

absl::Status NoteTopologyValues(SchemaBuilder& builder,
                                const RawTopology& raw) {
  for (const RawDevice& d : raw.devices) {
    for (const RawRule& r : d.rules) {
      if (absl::Status s = NoteMatchValues(builder, r.match); !s.ok()) {
        return absl::Status(s.code(), absl::StrCat("device ", d.name, ", rule ",
                                                   r.name, ": ", s.message()));
      }
    }
  }
  for (const RawLink& l : raw.links) {
    if (!l.filter.has_value()) continue;
    if (absl::Status s = NoteQueryValues(builder, *l.filter); !s.ok()) {
      return s;
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Topology> BindTopology(const RawTopology& raw,
                                      const Schema& schema) {
  std::vector<Device> devices;
  for (const RawDevice& d : raw.devices) {
    std::vector<Rule> rules;
    for (const RawRule& r : d.rules) {
      auto context = [&](const absl::Status& s) {
        return absl::Status(s.code(), absl::StrCat("device ", d.name, ", rule ",
                                                   r.name, ": ", s.message()));
      };
      absl::StatusOr<Element> match = ParseMatch(schema, r.match);
      if (!match.ok()) return context(match.status());
      absl::StatusOr<Action> action = Action::Parse(r.action);
      if (!action.ok()) return context(action.status());
      rules.push_back(Rule{r.name, r.priority, *std::move(match),
                           *std::move(action)});
    }
    absl::StatusOr<RuleTable> table = RuleTable::Create(std::move(rules));
    if (!table.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("device ", d.name, ": ", table.status().message()));
    }
    devices.push_back(Device{d.name, *std::move(table), d.external_ports});
  }
  // Link filters may name rules, so bind them against the rule names.
  absl::StatusOr<Topology> unlinked = Topology::Create(devices, {});
  if (!unlinked.ok()) return unlinked.status();
  const NamedElements names = RuleNames(*unlinked);
  std::vector<Link> links;
  for (const RawLink& l : raw.links) {
    Link link{l.from, l.port, l.to, std::nullopt, l.filter_text};
    if (l.filter.has_value()) {
      absl::StatusOr<Query> filter = BindQuery(*l.filter, schema, names);
      if (!filter.ok()) return filter.status();
      link.filter = *std::move(filter);
    }
    links.push_back(std::move(link));
  }
  return Topology::Create(std::move(devices), std::move(links));
}

Dataset MatchDataset(const Topology& topology,
                     std::shared_ptr<const Schema> schema) {
  Dataset dataset{std::move(schema), {}, 0};
  absl::flat_hash_set<Element> seen;
  for (const Device& d : topology.devices()) {
    for (const Rule& r : d.table.rules()) AddUnique(dataset, seen, r.match);
  }
  return dataset;
}

std::string SerializeRuleTable(const Schema& schema, const RuleTable& table) {
  Json rules = Json::array();
  for (const Rule& r : table.rules()) {
    Json match = Json::object();
    for (const auto& [field, value] : FormatMatch(schema, r.match)) {
      match[field] = value;
    }
    rules.push_back(Json{{"name", r.name},
                         {"priority", r.priority},
                         {"match", std::move(match)},
                         {"action", r.action.ToString()}});
  }
  return Json{{"rules", std::move(rules)}}.dump(2) + "\n";
}

absl::StatusOr<Workspace> LoadWorkspace(
    absl::string_view schema_json, const RawTopology& raw,
    const std::vector<const QueryExpr*>& queries) {
  absl::StatusOr<SchemaBuilder> builder = ParseSchemaBuilder(schema_json);
  if (!builder.ok()) return builder.status();
  if (absl::Status s = NoteTopologyValues(*builder, raw); !s.ok()) return s;
  for (const QueryExpr* q : queries) {
    if (absl::Status s = NoteQueryValues(*builder, *q); !s.ok()) return s;
  }
  absl::StatusOr<std::shared_ptr<const Schema>> schema = builder->Freeze();
  if (!schema.ok()) return schema.status();
  absl::StatusOr<Topology> topology = BindTopology(raw, **schema);
  if (!topology.ok()) return topology.status();
  NamedElements names = RuleNames(*topology);
  return Workspace{*std::move(schema), *std::move(topology), std::move(names)};
}

}  // namespace pec
