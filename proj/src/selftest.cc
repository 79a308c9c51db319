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

#include "pec/selftest.h"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pec/lattice.h"
#include "pec/random.h"
#include "spdlog/spdlog.h"

namespace pec {
namespace {

std::shared_ptr<const Schema> TbvSchema(uint32_t width) {
  SchemaBuilder builder;
  (void)builder.AddField({"bits", FieldKind::kTbv, width, 0, {}});
  return *builder.Freeze();
}

// Every header lies in exactly one PEC, each PEC holds headers of a single
// containment signature, no two PECs share one, and stored cardinalities are
// the enumerated sizes. Returns "" on success.
std::string CheckPartition(const Lattice& lattice,
                           const std::vector<Element>& inserted,
                           uint64_t cap) {
  std::vector<uint64_t> size(lattice.size(), 0);
  std::map<NodeId, std::vector<uint32_t>> signature_of;
  std::map<std::vector<uint32_t>, NodeId> node_of;
  std::string error;
  absl::Status s = ForEachHeader(
      lattice.schema(),
      [&](const Header& h) {
        if (!error.empty()) return;
        std::optional<NodeId> home;
        for (NodeId id = 0; id < lattice.size(); ++id) {
          const LatticeNode& node = lattice.node(id);
          if (!ContainsHeader(node.elem, h)) continue;
          bool deeper = false;
          for (NodeId c : node.children) {
            if (ContainsHeader(lattice.node(c).elem, h)) {
              deeper = true;
              break;
            }
          }
          if (deeper) continue;
          if (home.has_value()) {
            error = absl::StrCat("header ", FormatHeader(lattice.schema(), h),
                                 " lies in PECs ", *home, " and ", id);
            return;
          }
          home = id;
        }
        if (!home.has_value()) {
          error = absl::StrCat("header ", FormatHeader(lattice.schema(), h),
                               " lies in no PEC");
          return;
        }
        ++size[*home];
        std::vector<uint32_t> signature;
        for (uint32_t i = 0; i < inserted.size(); ++i) {
          if (ContainsHeader(inserted[i], h)) signature.push_back(i);
        }
        auto [sig, fresh_node] = signature_of.emplace(*home, signature);
        if (!fresh_node && sig->second != signature) {
          error = absl::StrCat("PEC ", *home, " mixes signatures");
          return;
        }
        auto [node, fresh_sig] = node_of.emplace(signature, *home);
        if (!fresh_sig && node->second != *home) {
          error = absl::StrCat("PECs ", node->second, " and ", *home,
                               " share a signature");
        }
      },
      cap);
  if (!s.ok()) return std::string(s.message());
  if (!error.empty()) return error;
  for (NodeId id = 0; id < lattice.size(); ++id) {
    if (lattice.node(id).cardinality != size[id]) {
      return absl::StrCat("PEC ", id, " stores ",
                          ToString(lattice.node(id).cardinality), " but holds ",
                          size[id], " headers");
    }
  }
  return "";
}

std::multiset<std::pair<std::string, std::string>> KeyedPecs(
    const Lattice& lattice) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (NodeId id = 0; id < lattice.size(); ++id) {
    out.emplace(CanonicalKey(lattice.node(id).elem),
                ToString(lattice.node(id).cardinality));
  }
  return out;
}

Lattice Build(const std::shared_ptr<const Schema>& schema,
              const std::vector<Element>& elements, Lattice::Mode mode) {
  Lattice lattice(schema, mode);
  for (const Element& e : elements) {
    if (!lattice.Insert(e).ok()) {
      throw InvariantViolation("generated element rejected");
    }
  }
  lattice.Settle();
  return lattice;
}

// Runs all suites on one instance. Returns the failing suite and detail.
std::optional<std::pair<std::string, std::string>> RunInstance(
    const SelftestOptions& options, uint64_t seed) {
  Rng rng(seed);
  auto schema = TbvSchema(options.width);
  const uint32_t star_percent = 20 + static_cast<uint32_t>(rng.Below(60));
  const uint64_t count = 1 + rng.Below(options.rule_count);
  std::vector<Element> elements;
  for (uint64_t i = 0; i < count; ++i) {
    elements.emplace_back(RandomTbv(rng, options.width, star_percent));
  }

  Lattice eager = Build(schema, elements, Lattice::Mode::kEager);
  if (std::string e = CheckPartition(eager, elements, options.enum_cap);
      !e.empty()) {
    return std::make_pair("partition", e);
  }
  if (absl::Status s = eager.CheckInvariants(); !s.ok()) {
    return std::make_pair("partition", std::string(s.message()));
  }

  BigInt total = 0;
  for (NodeId id = 0; id < eager.size(); ++id) {
    total += eager.node(id).cardinality;
  }
  if (total != Pow2(options.width)) {
    return std::make_pair("conservation",
                          absl::StrCat("PECs sum to ", ToString(total)));
  }

  const auto keyed = KeyedPecs(eager);
  std::vector<Element> shuffled = elements;
  rng.Shuffle(shuffled);
  if (KeyedPecs(Build(schema, shuffled, Lattice::Mode::kEager)) != keyed) {
    return std::make_pair("order_invariance",
                          "a permuted insertion order changed the PECs");
  }
  if (KeyedPecs(Build(schema, elements, Lattice::Mode::kAmortized)) != keyed) {
    return std::make_pair("amortized",
                          "amortized and eager PEC cardinalities differ");
  }

  const uint32_t vars = std::min<uint32_t>(options.width, 10);
  DnfFormula f = RandomDnf(rng, vars, 2 * vars, 4);
  const uint64_t models = TruthTableModels(f);
  absl::StatusOr<BigInt> counted = CountDnfModels(f);
  absl::StatusOr<bool> tautology = IsTautology(f);
  if (!counted.ok() || !tautology.ok()) {
    return std::make_pair("dnf", "oracle call failed");
  }
  if (*counted != models || *tautology != (models == (uint64_t{1} << vars))) {
    return std::make_pair(
        "dnf", absl::StrCat("lattice counts ", ToString(*counted),
                            " models, truth table ", models));
  }
  return std::nullopt;
}

}  // namespace

absl::StatusOr<SelftestReport> RunSelftest(const SelftestOptions& options) {
  if (options.width == 0 || options.width > kMaxSelftestWidth) {
    return absl::InvalidArgumentError(absl::StrCat(
        "width must be in [1, ", kMaxSelftestWidth, "], got ", options.width));
  }
  if (options.rule_count == 0) {
    return absl::InvalidArgumentError("rule count must be positive");
  }
  SelftestReport report;
  report.suites = {"partition", "conservation", "order_invariance",
                   "amortized", "dnf"};
  for (uint32_t i = 0; i < options.iterations; ++i) {
    const uint64_t seed = options.seed + i;
    spdlog::debug("selftest instance seed={}", seed);
    std::optional<std::pair<std::string, std::string>> failed;
    try {
      failed = RunInstance(options, seed);
    } catch (const InvariantViolation& e) {
      failed = std::make_pair("invariant", std::string(e.what()));
    }
    ++report.iterations;
    if (failed.has_value()) {
      report.failure = SelftestFailure{failed->first, seed, failed->second};
      break;
    }
  }
  return report;
}

}  // namespace pec
