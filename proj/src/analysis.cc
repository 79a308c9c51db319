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

#include "pec/analysis.h"

#include <algorithm>
#include <map>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"

namespace pec {

absl::Status ValidatePortName(absl::string_view port) {
  if (port.empty()) return absl::InvalidArgumentError("empty port name");
  if (port.find_first_of("+*") != absl::string_view::npos) {
    return absl::InvalidArgumentError(
        absl::StrCat("wildcard interface name '", port, "' is not supported"));
  }
  return absl::OkStatus();
}

absl::StatusOr<Action> Action::Parse(absl::string_view text) {
  if (text == "drop" || text == "DROP") return Action{Kind::kDrop, ""};
  if (text == "controller" || text == "CONTROLLER") {
    return Action{Kind::kController, ""};
  }
  if (absl::ConsumePrefix(&text, "forward:") && !text.empty()) {
    if (absl::Status s = ValidatePortName(text); !s.ok()) return s;
    return Action{Kind::kForward, std::string(text)};
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "bad action '", text, "'; expected drop, controller or forward:<port>"));
}

std::string Action::ToString() const {
  switch (kind) {
    case Kind::kDrop:
      return "drop";
    case Kind::kController:
      return "controller";
    case Kind::kForward:
      return absl::StrCat("forward:", port);
  }
  return "?";
}

absl::StatusOr<RuleTable> RuleTable::Create(std::vector<Rule> rules) {
  std::stable_sort(rules.begin(), rules.end(),
                   [](const Rule& a, const Rule& b) {
                     return a.priority < b.priority;
                   });
  for (size_t i = 1; i < rules.size(); ++i) {
    if (rules[i].priority == rules[i - 1].priority) {
      return absl::InvalidArgumentError(
          absl::StrCat("rules '", rules[i - 1].name, "' and '", rules[i].name,
                       "' share priority ", rules[i].priority));
    }
  }
  RuleTable table;
  table.rules_ = std::move(rules);
  return table;
}

absl::StatusOr<Topology> Topology::Create(std::vector<Device> devices,
                                          std::vector<Link> links) {
  Topology topology;
  topology.devices_ = std::move(devices);
  absl::flat_hash_set<std::string> names;
  for (const Device& d : topology.devices_) {
    if (d.name.empty()) return absl::InvalidArgumentError("unnamed device");
    if (!names.insert(d.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate device '", d.name, "'"));
    }
  }
  absl::flat_hash_set<std::pair<std::string, std::string>> ports;
  for (const Link& link : links) {
    if (!names.contains(link.from) || !names.contains(link.to)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "link ", link.from, ":", link.port, " -> ", link.to,
          " has a dangling endpoint"));
    }
    if (!ports.insert({link.from, link.port}).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "port ", link.from, ":", link.port, " is linked twice"));
    }
  }
  topology.links_ = std::move(links);
  return topology;
}

std::optional<size_t> Topology::DeviceIndex(absl::string_view name) const {
  for (size_t i = 0; i < devices_.size(); ++i) {
    if (devices_[i].name == name) return i;
  }
  return std::nullopt;
}

NamedElements RuleNames(const Topology& topology) {
  NamedElements names;
  absl::flat_hash_set<std::string> ambiguous;
  for (const Device& d : topology.devices()) {
    for (const Rule& r : d.table.rules()) {
      if (r.name.empty()) continue;
      names.insert_or_assign(absl::StrCat(d.name, ".", r.name), r.match);
      if (ambiguous.contains(r.name)) continue;
      auto [it, inserted] = names.try_emplace(r.name, r.match);
      if (!inserted && !(it->second == r.match)) {
        names.erase(it);
        ambiguous.insert(r.name);
      }
    }
  }
  return names;
}

absl::Status PrepareTopology(Lattice& lattice, const Topology& topology) {
  for (const Device& d : topology.devices()) {
    for (const Rule& r : d.table.rules()) {
      if (absl::StatusOr<NodeId> id = lattice.Insert(r.match); !id.ok()) {
        return absl::Status(id.status().code(),
                            absl::StrCat("device ", d.name, ", rule ", r.name,
                                         ": ", id.status().message()));
      }
    }
  }
  for (const Link& link : topology.links()) {
    if (!link.filter.has_value()) continue;
    if (absl::Status s = Prepare(lattice, *link.filter); !s.ok()) return s;
  }
  lattice.Settle();
  return absl::OkStatus();
}

absl::StatusOr<std::vector<PecSet>> EffectivePecs(const Lattice& lattice,
                                                  const RuleTable& table) {
  if (!lattice.settled()) {
    return absl::FailedPreconditionError("lattice is not settled");
  }
  std::vector<PecSet> result;
  result.reserve(table.size() + 1);
  PecSet covered;
  for (const Rule& r : table.rules()) {
    std::optional<NodeId> n = lattice.Find(r.match);
    if (!n.has_value()) {
      return absl::NotFoundError(
          absl::StrCat("rule '", r.name, "' is not in the lattice"));
    }
    PecSet own = lattice.Subtree(*n);
    result.push_back(Difference(own, covered));
    covered = Union(covered, own);
  }
  result.push_back(Difference(lattice.Subtree(Lattice::kRoot), covered));
  return result;
}

absl::StatusOr<std::vector<size_t>> ShadowedRules(const Lattice& lattice,
                                                  const RuleTable& table) {
  absl::StatusOr<std::vector<PecSet>> effective = EffectivePecs(lattice, table);
  if (!effective.ok()) return effective.status();
  std::vector<size_t> shadowed;
  for (size_t i = 0; i < table.size(); ++i) {
    absl::StatusOr<PecSet> live = NonEmpty(lattice, (*effective)[i]);
    if (!live.ok()) return live.status();
    if (live->empty()) shadowed.push_back(i);
  }
  return shadowed;
}

std::optional<size_t> ForwardingGraph::VertexIndex(
    absl::string_view name) const {
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] == name) return i;
  }
  return std::nullopt;
}

PecSet ForwardingGraph::Pecs() const {
  PecSet all;
  for (const Edge& e : edges) all = Union(all, e.label);
  return all;
}

std::vector<size_t> ForwardingGraph::Walk(NodeId pec, size_t start) const {
  std::vector<size_t> path = {start};
  std::vector<bool> seen(device_count, false);
  size_t at = start;
  while (!IsTerminal(at)) {
    seen[at] = true;
    auto it = next_edge[at].find(pec);
    if (it == next_edge[at].end()) break;
    at = edges[it->second].to;
    path.push_back(at);
    if (!IsTerminal(at) && seen[at]) break;
  }
  return path;
}

absl::StatusOr<ForwardingGraph> BuildForwardingGraph(
    const Lattice& lattice, const Topology& topology,
    const GraphOptions& options) {
  ForwardingGraph graph;
  const std::vector<Device>& devices = topology.devices();
  graph.device_count = devices.size();
  for (const Device& d : devices) graph.vertices.push_back(d.name);
  graph.drop = graph.vertices.size();
  graph.vertices.push_back("drop");
  graph.controller = graph.vertices.size();
  graph.vertices.push_back("controller");
  graph.next_edge.resize(devices.size());

  std::map<std::pair<std::string, std::string>, const Link*> links;
  for (const Link& link : topology.links()) {
    links[{link.from, link.port}] = &link;
  }
  std::map<std::string, size_t> egress;

  for (size_t d = 0; d < devices.size(); ++d) {
    const Device& device = devices[d];
    absl::StatusOr<std::vector<PecSet>> effective =
        EffectivePecs(lattice, device.table);
    if (!effective.ok()) return effective.status();
    if (options.filter_empty) {
      for (PecSet& s : *effective) {
        absl::StatusOr<PecSet> live = NonEmpty(lattice, s);
        if (!live.ok()) return live.status();
        s = *std::move(live);
      }
    }
    std::map<size_t, PecSet> labels;
    auto add = [&labels](size_t to, const PecSet& pecs) {
      if (pecs.empty()) return;
      labels[to] = Union(labels[to], pecs);
    };
    const std::vector<Rule>& rules = device.table.rules();
    for (size_t i = 0; i < rules.size(); ++i) {
      const PecSet& pecs = (*effective)[i];
      const Action& action = rules[i].action;
      switch (action.kind) {
        case Action::Kind::kDrop:
          add(graph.drop, pecs);
          break;
        case Action::Kind::kController:
          add(graph.controller, pecs);
          break;
        case Action::Kind::kForward: {
          auto link = links.find({device.name, action.port});
          if (link != links.end()) {
            const size_t to = *topology.DeviceIndex(link->second->to);
            if (!link->second->filter.has_value()) {
              add(to, pecs);
              break;
            }
            absl::StatusOr<PecSet> admitted =
                ConvertToPecs(lattice, *link->second->filter);
            if (!admitted.ok()) return admitted.status();
            add(to, Intersection(pecs, *admitted));
            add(graph.drop, Difference(pecs, *admitted));
            break;
          }
          if (std::find(device.external_ports.begin(),
                        device.external_ports.end(),
                        action.port) == device.external_ports.end()) {
            return absl::InvalidArgumentError(
                absl::StrCat("device ", device.name, ", rule ", rules[i].name,
                             ": port '", action.port,
                             "' is neither linked nor external"));
          }
          std::string name = absl::StrCat(device.name, ":", action.port);
          auto [it, inserted] = egress.try_emplace(name, 0);
          if (inserted) {
            it->second = graph.vertices.size();
            graph.vertices.push_back(name);
          }
          add(it->second, pecs);
          break;
        }
      }
    }
    // Table misses get no edge: their walk ends at this device.
    for (auto& [to, label] : labels) {
      const size_t edge = graph.edges.size();
      for (NodeId pec : label) {
        if (!graph.next_edge[d].emplace(pec, edge).second) {
          throw InvariantViolation(absl::StrCat(
              "PEC ", pec, " leaves device ", device.name, " twice"));
        }
      }
      graph.edges.push_back({d, to, std::move(label)});
    }
  }
  return graph;
}

std::vector<LoopWitness> DetectLoops(const ForwardingGraph& graph) {
  std::vector<LoopWitness> loops;
  for (NodeId pec : graph.Pecs()) {
    for (size_t start = 0; start < graph.device_count; ++start) {
      std::vector<size_t> path = graph.Walk(pec, start);
      const size_t last = path.back();
      if (graph.IsTerminal(last) || path.size() < 2) continue;
      auto first = std::find(path.begin(), path.end() - 1, last);
      if (first == path.end() - 1) continue;
      LoopWitness witness{pec, {}};
      for (auto it = first; it != path.end(); ++it) {
        witness.cycle.push_back(graph.vertices[*it]);
      }
      loops.push_back(std::move(witness));
      break;
    }
  }
  return loops;
}

absl::StatusOr<VerifyResult> Verify(const Lattice& lattice,
                                    const ForwardingGraph& graph,
                                    const PecSet& pecs,
                                    absl::string_view ingress,
                                    absl::string_view target,
                                    const GraphOptions& options) {
  std::optional<size_t> start = graph.VertexIndex(ingress);
  if (!start.has_value() || graph.IsTerminal(*start)) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown ingress device '", ingress, "'"));
  }
  std::optional<size_t> goal = graph.VertexIndex(target);
  if (!goal.has_value()) {
    for (size_t v = graph.controller + 1; v < graph.vertices.size(); ++v) {
      absl::string_view name = graph.vertices[v];
      if (!absl::EndsWith(name, absl::StrCat(":", target))) continue;
      if (goal.has_value()) {
        return absl::InvalidArgumentError(
            absl::StrCat("target '", target, "' names several ports"));
      }
      goal = v;
    }
  }
  if (!goal.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown target '", target, "'"));
  }
  VerifyResult result;
  if (options.filter_empty) {
    absl::StatusOr<PecSet> live = NonEmpty(lattice, pecs);
    if (!live.ok()) return live.status();
    result.checked = *std::move(live);
  } else {
    result.checked = pecs;
  }
  for (NodeId pec : result.checked) {
    std::vector<size_t> path = graph.Walk(pec, *start);
    if (std::find(path.begin(), path.end(), *goal) != path.end()) continue;
    VerifyWitness witness{pec, {}};
    for (size_t v : path) witness.path.push_back(graph.vertices[v]);
    result.witnesses.push_back(std::move(witness));
  }
  result.pass = result.witnesses.empty();
  return result;
}

}  // namespace pec
