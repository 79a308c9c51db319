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

#ifndef PEC_ANALYSIS_H_
#define PEC_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pec/element.h"
#include "pec/lattice.h"
#include "pec/query.h"

namespace pec {

// Interface names are literal: "+" and "*" wildcards are rejected.
absl::Status ValidatePortName(absl::string_view port);

struct Action {
  enum class Kind { kForward, kDrop, kController };
  Kind kind = Kind::kDrop;
  // Output port, only for kForward.
  std::string port;

  // "drop", "controller" or "forward:<port>".
  static absl::StatusOr<Action> Parse(absl::string_view text);
  std::string ToString() const;
  bool operator==(const Action& other) const = default;
};

struct Rule {
  std::string name;
  // Lower values take precedence.
  int64_t priority = 0;
  Element match;
  Action action;
};

// First-match table; rules are kept in ascending priority value.
class RuleTable {
 public:
  RuleTable() = default;
  // Fails on duplicate priorities.
  static absl::StatusOr<RuleTable> Create(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  size_t size() const { return rules_.size(); }

 private:
  std::vector<Rule> rules_;
};

struct Device {
  std::string name;
  RuleTable table;
  // Ports that leave the modeled network. Forwarding to a port that is
  // neither linked nor external is an error.
  std::vector<std::string> external_ports;
};

struct Link {
  std::string from;
  std::string port;
  std::string to;
  // Optional admission filter; headers outside it are dropped on the link.
  std::optional<Query> filter;
  std::string filter_text;
};

class Topology {
 public:
  Topology() = default;
  // Fails on dangling link endpoints, duplicate device names or duplicate
  // (device, port) links.
  static absl::StatusOr<Topology> Create(std::vector<Device> devices,
                                         std::vector<Link> links);

  const std::vector<Device>& devices() const { return devices_; }
  const std::vector<Link>& links() const { return links_; }
  std::optional<size_t> DeviceIndex(absl::string_view name) const;

 private:
  std::vector<Device> devices_;
  std::vector<Link> links_;
};

// Names usable as query atoms: "<device>.<rule>" for every rule, plus the
// bare rule name when it denotes one element across all devices.
NamedElements RuleNames(const Topology& topology);

// Inserts every rule match and link filter atom, then settles.
absl::Status PrepareTopology(Lattice& lattice, const Topology& topology);

// PECs of each rule's match minus the PECs of all higher-priority matches,
// in table order. The last entry is the table miss: PECs matched by no rule.
absl::StatusOr<std::vector<PecSet>> EffectivePecs(const Lattice& lattice,
                                                  const RuleTable& table);

// Indices (into table.rules()) of rules whose effective PECs are all empty.
absl::StatusOr<std::vector<size_t>> ShadowedRules(const Lattice& lattice,
                                                  const RuleTable& table);

struct GraphOptions {
  // Keep only non-empty PECs on edges. Turning this off reproduces the
  // behavior of tools that cannot tell empty PECs apart.
  bool filter_empty = true;
};

// Vertices: the devices in topology order, then "drop", "controller", then
// one egress vertex "<device>:<port>" per external port in use.
struct ForwardingGraph {
  struct Edge {
    size_t from;
    size_t to;
    PecSet label;
  };

  std::vector<std::string> vertices;
  size_t device_count = 0;
  size_t drop = 0;
  size_t controller = 0;
  std::vector<Edge> edges;
  // Per device: PEC -> index of the out-edge carrying it.
  std::vector<absl::flat_hash_map<NodeId, size_t>> next_edge;

  bool IsTerminal(size_t vertex) const { return vertex >= device_count; }
  std::optional<size_t> VertexIndex(absl::string_view name) const;
  // PECs on at least one edge, ascending.
  PecSet Pecs() const;
  // Vertices a header of `pec` visits when it enters at `start`, ending at
  // a terminal vertex, at a device without an edge for it, or at the first
  // repeated device (which then appears twice).
  std::vector<size_t> Walk(NodeId pec, size_t start) const;
};

absl::StatusOr<ForwardingGraph> BuildForwardingGraph(
    const Lattice& lattice, const Topology& topology,
    const GraphOptions& options = {});

struct LoopWitness {
  NodeId pec;
  // Devices on the cycle, starting and ending at the same device.
  std::vector<std::string> cycle;
};

// One witness per PEC that can cycle when entering at any device.
std::vector<LoopWitness> DetectLoops(const ForwardingGraph& graph);

struct VerifyWitness {
  NodeId pec;
  std::vector<std::string> path;
};

struct VerifyResult {
  bool pass = true;
  // PECs checked, after the optional emptiness filter.
  PecSet checked;
  std::vector<VerifyWitness> witnesses;
};

// Checks that every PEC of `pecs` entering at `ingress` visits `target`
// (a vertex name, or a port name that names exactly one egress vertex).
absl::StatusOr<VerifyResult> Verify(const Lattice& lattice,
                                    const ForwardingGraph& graph,
                                    const PecSet& pecs,
                                    absl::string_view ingress,
                                    absl::string_view target,
                                    const GraphOptions& options = {});

}  // namespace pec

#endif  // PEC_ANALYSIS_H_
