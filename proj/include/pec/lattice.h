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

#ifndef PEC_LATTICE_H_
#define PEC_LATTICE_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pec/big_int.h"
#include "pec/element.h"
#include "pec/schema.h"

namespace pec {

using NodeId = uint32_t;

// Raised when an internal lattice invariant does not hold. This always
// indicates a defect, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct LatticeNode {
  Element elem;
  // Direct children in the Hasse diagram, in the order they were linked.
  std::vector<NodeId> children;
  // Number of headers in elem that no descendant matches.
  BigInt cardinality;
  // cardinality(elem), cached.
  BigInt elem_cardinality;
  // True if the element was passed to Insert, false if it only exists to
  // close the lattice under intersection.
  bool inserted = false;
};

struct NodeDump {
  NodeId id;
  std::string element;
  BigInt pec_cardinality;
  std::vector<NodeId> children;
};

struct PecReport {
  uint64_t insertions = 0;
  uint64_t pecs = 0;
  uint64_t empty_pecs = 0;
  uint64_t atomic_predicates = 0;
  // Filled only on request.
  std::vector<NodeDump> nodes;
};

// Hasse diagram of a meet-semilattice of elements, rooted at the schema's top
// element. Every node denotes one packet equivalence class: its element minus
// the elements of all its descendants.
//
// In eager mode every Insert leaves all PEC cardinalities up to date. In
// amortized mode the recomputation is deferred until Settle(), and queries on
// an unsettled lattice fail with FailedPrecondition.
class Lattice {
 public:
  enum class Mode { kEager, kAmortized };

  static constexpr NodeId kRoot = 0;

  explicit Lattice(std::shared_ptr<const Schema> schema,
                   Mode mode = Mode::kEager);

  Lattice(const Lattice&) = delete;
  Lattice& operator=(const Lattice&) = delete;
  Lattice(Lattice&&) = default;
  Lattice& operator=(Lattice&&) = default;

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& shared_schema() const {
    return schema_;
  }
  Mode mode() const { return mode_; }

  // Adds `elem` and every intersection it forces. Returns the node of `elem`;
  // inserting an element that already has a node only marks it as inserted.
  absl::StatusOr<NodeId> Insert(const Element& elem);

  // Recomputes the PEC cardinality of every modified node.
  void Settle();
  bool settled() const { return modified_.empty(); }
  // Nodes awaiting recomputation, in the order they were first modified.
  const std::vector<NodeId>& modified_nodes() const { return modified_; }

  // Hash-consed node lookup. A created node is not linked into the DAG.
  std::pair<NodeId, bool> FindOrCreateNode(const Element& elem);
  std::optional<NodeId> Find(const Element& elem) const;

  size_t size() const { return nodes_.size(); }
  const LatticeNode& node(NodeId id) const { return nodes_[id]; }
  uint64_t insertions() const { return insertions_; }

  absl::StatusOr<BigInt> PecCardinality(NodeId id) const;
  absl::StatusOr<bool> IsEmptyPec(NodeId id) const;

  // `id` and all its descendants, each once, in ascending id order.
  std::vector<NodeId> Subtree(NodeId id) const;

  absl::StatusOr<PecReport> Report(bool dump_nodes = false) const;

  // Scans the whole lattice: Hasse shape, closure under intersection, stored
  // cardinalities and conservation. Quadratic or worse; meant for tests and
  // self checks on small lattices.
  absl::Status CheckInvariants() const;

 private:
  void InsertNode(NodeId parent, NodeId n);
  void MarkModified(NodeId id);
  void ComputeCardinality(NodeId id);
  absl::Status CheckSettled() const;

  std::shared_ptr<const Schema> schema_;
  Mode mode_;
  std::deque<LatticeNode> nodes_;
  absl::flat_hash_map<Element, NodeId> index_;
  std::vector<NodeId> modified_;
  std::vector<bool> in_modified_;
  // Per-node visit stamps for the recomputation traversal.
  std::vector<uint64_t> visit_stamp_;
  uint64_t epoch_ = 0;
  uint64_t insertions_ = 0;
};

}  // namespace pec

#endif  // PEC_LATTICE_H_
