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
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"
#include "pec/element_text.h"

namespace pec {

Lattice::Lattice(std::shared_ptr<const Schema> schema, Mode mode)
    : schema_(std::move(schema)), mode_(mode) {
  Element top = Top(*schema_);
  BigInt size = Cardinality(top);
  nodes_.push_back(LatticeNode{top, {}, size, size, false});
  index_.emplace(std::move(top), kRoot);
  in_modified_.push_back(false);
  visit_stamp_.push_back(0);
}

absl::StatusOr<NodeId> Lattice::Insert(const Element& elem) {
  if (absl::Status s = Validate(*schema_, elem); !s.ok()) return s;
  ++insertions_;
  auto [n, created] = FindOrCreateNode(elem);
  nodes_[n].inserted = true;
  if (created) {
    MarkModified(n);
    InsertNode(kRoot, n);
    if (mode_ == Mode::kEager) Settle();
  }
  return n;
}

std::pair<NodeId, bool> Lattice::FindOrCreateNode(const Element& elem) {
  if (auto it = index_.find(elem); it != index_.end()) {
    return {it->second, false};
  }
  const NodeId id = static_cast<NodeId>(nodes_.size());
  BigInt size = Cardinality(elem);
  nodes_.push_back(LatticeNode{elem, {}, size, size, false});
  index_.emplace(elem, id);
  in_modified_.push_back(false);
  visit_stamp_.push_back(0);
  return {id, true};
}

std::optional<NodeId> Lattice::Find(const Element& elem) const {
  if (auto it = index_.find(elem); it != index_.end()) return it->second;
  return std::nullopt;
}

void Lattice::MarkModified(NodeId id) {
  if (in_modified_[id]) return;
  in_modified_[id] = true;
  modified_.push_back(id);
}

void Lattice::InsertNode(NodeId parent, NodeId n) {
  std::vector<NodeId> gamma;
  // Recursive calls only touch nodes strictly below `parent`, but a copy
  // keeps the iteration independent of the parent's own updates.
  const std::vector<NodeId> children = nodes_[parent].children;
  for (NodeId child : children) {
    const Element& child_elem = nodes_[child].elem;
    const Element& n_elem = nodes_[n].elem;
    if (SubsetOf(child_elem, n_elem)) {
      gamma.push_back(child);
    } else if (SubsetOf(n_elem, child_elem)) {
      InsertNode(child, n);
      return;
    } else if (std::optional<Element> meet = Meet(n_elem, child_elem)) {
      auto [m, created] = FindOrCreateNode(*meet);
      gamma.push_back(m);
      if (created) {
        MarkModified(m);
        InsertNode(child, m);
      }
    }
  }
  nodes_[parent].children.push_back(n);
  MarkModified(parent);

  std::sort(gamma.begin(), gamma.end());
  gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
  absl::flat_hash_set<NodeId> max_children;
  for (NodeId c : gamma) {
    bool maximal = true;
    for (NodeId other : gamma) {
      if (other != c &&
          nodes_[c].elem_cardinality < nodes_[other].elem_cardinality &&
          SubsetOf(nodes_[c].elem, nodes_[other].elem)) {
        maximal = false;
        break;
      }
    }
    if (maximal) max_children.insert(c);
  }
  if (max_children.empty()) return;
  std::vector<NodeId>& siblings = nodes_[parent].children;
  siblings.erase(std::remove_if(siblings.begin(), siblings.end(),
                                [&](NodeId c) {
                                  return max_children.contains(c);
                                }),
                 siblings.end());
  std::vector<NodeId>& adopted = nodes_[n].children;
  for (NodeId c : gamma) {
    if (max_children.contains(c) &&
        std::find(adopted.begin(), adopted.end(), c) == adopted.end()) {
      adopted.push_back(c);
    }
  }
}

void Lattice::Settle() {
  if (modified_.empty()) return;
  // A strict descendant always has a strictly smaller element, so ascending
  // element size settles every node's descendants before the node itself.
  std::vector<NodeId> order = modified_;
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return nodes_[a].elem_cardinality < nodes_[b].elem_cardinality;
  });
  for (NodeId id : order) ComputeCardinality(id);
  modified_.clear();
}

void Lattice::ComputeCardinality(NodeId id) {
  const uint64_t stamp = ++epoch_;
  LatticeNode& target = nodes_[id];
  BigInt cardinality = target.elem_cardinality;
  std::vector<NodeId> queue = {id};
  visit_stamp_[id] = stamp;
  for (size_t head = 0; head < queue.size(); ++head) {
    for (NodeId child : nodes_[queue[head]].children) {
      if (visit_stamp_[child] == stamp) continue;
      if (in_modified_[child]) {
        throw InvariantViolation(absl::StrCat(
            "node ", child, " is still dirty while settling ancestor ", id));
      }
      visit_stamp_[child] = stamp;
      cardinality -= nodes_[child].cardinality;
      queue.push_back(child);
    }
  }
  if (cardinality < 0) {
    throw InvariantViolation(
        absl::StrCat("negative PEC cardinality at node ", id));
  }
  target.cardinality = std::move(cardinality);
  in_modified_[id] = false;
}

absl::Status Lattice::CheckSettled() const {
  if (!modified_.empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "lattice has ", modified_.size(), " unsettled nodes; call Settle()"));
  }
  return absl::OkStatus();
}

absl::StatusOr<BigInt> Lattice::PecCardinality(NodeId id) const {
  if (id >= nodes_.size()) {
    return absl::OutOfRangeError(absl::StrCat("no node ", id));
  }
  if (absl::Status s = CheckSettled(); !s.ok()) return s;
  return nodes_[id].cardinality;
}

absl::StatusOr<bool> Lattice::IsEmptyPec(NodeId id) const {
  absl::StatusOr<BigInt> cardinality = PecCardinality(id);
  if (!cardinality.ok()) return cardinality.status();
  return cardinality->is_zero();
}

std::vector<NodeId> Lattice::Subtree(NodeId id) const {
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<NodeId> result = {id};
  seen[id] = true;
  for (size_t head = 0; head < result.size(); ++head) {
    for (NodeId child : nodes_[result[head]].children) {
      if (seen[child]) continue;
      seen[child] = true;
      result.push_back(child);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

absl::StatusOr<PecReport> Lattice::Report(bool dump_nodes) const {
  if (absl::Status s = CheckSettled(); !s.ok()) return s;
  PecReport report;
  report.insertions = insertions_;
  report.pecs = nodes_.size();
  for (const LatticeNode& n : nodes_) {
    if (n.cardinality.is_zero()) ++report.empty_pecs;
  }
  report.atomic_predicates = report.pecs - report.empty_pecs;
  if (dump_nodes) {
    for (NodeId id = 0; id < nodes_.size(); ++id) {
      const LatticeNode& n = nodes_[id];
      report.nodes.push_back(NodeDump{id, FormatElement(*schema_, n.elem),
                                      n.cardinality, n.children});
    }
  }
  return report;
}

absl::Status Lattice::CheckInvariants() const {
  if (absl::Status s = CheckSettled(); !s.ok()) return s;
  const NodeId count = static_cast<NodeId>(nodes_.size());
  std::vector<std::vector<NodeId>> below(count);
  for (NodeId id = 0; id < count; ++id) below[id] = Subtree(id);
  auto reaches = [&](NodeId from, NodeId to) {
    return std::binary_search(below[from].begin(), below[from].end(), to);
  };
  BigInt total = 0;
  for (NodeId id = 0; id < count; ++id) {
    const LatticeNode& n = nodes_[id];
    if (n.elem_cardinality != Cardinality(n.elem)) {
      return absl::InternalError(absl::StrCat("stale size at node ", id));
    }
    for (NodeId c : n.children) {
      if (c == id || !SubsetOf(nodes_[c].elem, n.elem)) {
        return absl::InternalError(
            absl::StrCat("edge ", id, "->", c, " is not strictly descending"));
      }
      for (NodeId other : n.children) {
        if (other != c && SubsetOf(nodes_[c].elem, nodes_[other].elem)) {
          return absl::InternalError(absl::StrCat(
              "children ", c, " and ", other, " of ", id, " are comparable"));
        }
      }
    }
    BigInt expected = n.elem_cardinality;
    for (NodeId d : below[id]) {
      if (d != id) expected -= nodes_[d].cardinality;
    }
    if (expected != n.cardinality) {
      return absl::InternalError(
          absl::StrCat("wrong PEC cardinality at node ", id));
    }
    total += n.cardinality;
  }
  if (total != nodes_[kRoot].elem_cardinality) {
    return absl::InternalError("PEC cardinalities do not sum to the universe");
  }
  for (NodeId a = 0; a < count; ++a) {
    for (NodeId b = 0; b < count; ++b) {
      if (a == b) continue;
      if (SubsetOf(nodes_[a].elem, nodes_[b].elem) && !reaches(b, a)) {
        return absl::InternalError(
            absl::StrCat("node ", a, " is below ", b, " but not reachable"));
      }
      if (b < a) continue;
      std::optional<Element> meet = Meet(nodes_[a].elem, nodes_[b].elem);
      if (meet.has_value() && !Find(*meet).has_value()) {
        return absl::InternalError(absl::StrCat(
            "meet of nodes ", a, " and ", b, " has no node"));
      }
    }
  }
  return absl::OkStatus();
}

}  // namespace pec
