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

#include "pec/oracle.h"

#include <cstdlib>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "pec/element_text.h"

namespace pec {
namespace {

// Number of values field `f` can take in a header.
BigInt FieldValues(const Field& f) { return f.DomainSize(); }

bool ContainsValue(const Element& elem, uint128 v) {
  switch (elem.kind()) {
    case ElementKind::kPrefix: {
      const IpPrefix& p = elem.as<IpPrefix>();
      if (p.length() == 0) return true;
      const uint32_t shift = p.width() - p.length();
      return (v >> shift) == (p.address() >> shift);
    }
    case ElementKind::kTbv: {
      const Tbv& t = elem.as<Tbv>();
      for (uint32_t p = 0; p < t.width(); ++p) {
        const char digit = t.digit(p);
        if (digit == '*') continue;
        const unsigned bit =
            static_cast<unsigned>((v >> (t.width() - 1 - p)) & 1);
        if (bit != static_cast<unsigned>(digit - '0')) return false;
      }
      return true;
    }
    case ElementKind::kRange: {
      const Range& r = elem.as<Range>();
      return r.lo() <= v && v < r.hi();
    }
    case ElementKind::kDisjointRanges:
      for (const Interval& i : elem.as<DisjointRanges>().intervals()) {
        if (i.lo <= v && v < i.hi) return true;
      }
      return false;
    case ElementKind::kValueSet:
      return elem.as<ValueSet>().ContainsValue(static_cast<uint64_t>(v));
    case ElementKind::kOptional: {
      const OptionalValue& o = elem.as<OptionalValue>();
      return o.is_wildcard() || *o.value() == v;
    }
    case ElementKind::kTuple:
      break;
  }
  throw InvariantViolation("tuple coordinate where a field was expected");
}

std::string BitString(uint128 v, uint32_t width) {
  std::string out(width, '0');
  for (uint32_t p = 0; p < width; ++p) {
    if ((v >> (width - 1 - p)) & 1) out[p] = '1';
  }
  return out;
}

std::string Uint128ToString(uint128 v) {
  if (v == 0) return "0";
  std::string digits;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return std::string(digits.rbegin(), digits.rend());
}

}  // namespace

absl::Status CheckEnumerable(const Schema& schema, uint64_t cap) {
  if (schema.UniverseSize() > cap) {
    return absl::ResourceExhaustedError(
        absl::StrCat("header universe of ", ToString(schema.UniverseSize()),
                     " exceeds the enumeration cap of ", cap));
  }
  return absl::OkStatus();
}

absl::Status ForEachHeader(const Schema& schema,
                           const std::function<void(const Header&)>& fn,
                           uint64_t cap) {
  if (absl::Status s = CheckEnumerable(schema, cap); !s.ok()) return s;
  std::vector<uint128> sizes;
  for (const Field& f : schema.fields()) {
    sizes.push_back(static_cast<uint128>(*ToUint64(FieldValues(f))));
  }
  Header header(schema.size(), 0);
  while (true) {
    fn(header);
    size_t i = header.size();
    while (i > 0) {
      --i;
      if (++header[i] < sizes[i]) break;
      header[i] = 0;
      if (i == 0) return absl::OkStatus();
    }
  }
}

bool ContainsHeader(const Element& elem, const Header& header) {
  if (elem.kind() != ElementKind::kTuple) return ContainsValue(elem, header[0]);
  const std::vector<Element>& coords = elem.coords();
  for (size_t i = 0; i < coords.size(); ++i) {
    if (!ContainsValue(coords[i], header[i])) return false;
  }
  return true;
}

bool EvaluateQuery(const Query& q, const Header& header) {
  switch (q.kind()) {
    case Query::Kind::kAtom:
      return ContainsHeader(q.element(), header);
    case Query::Kind::kNot:
      return !EvaluateQuery(q.lhs(), header);
    case Query::Kind::kAnd:
      return EvaluateQuery(q.lhs(), header) && EvaluateQuery(q.rhs(), header);
    case Query::Kind::kOr:
      return EvaluateQuery(q.lhs(), header) || EvaluateQuery(q.rhs(), header);
  }
  return false;
}

absl::StatusOr<SignatureClasses> ClassifyHeaders(
    const Schema& schema, const std::vector<Element>& elements, uint64_t cap) {
  SignatureClasses classes;
  std::vector<uint32_t> signature;
  absl::Status s = ForEachHeader(
      schema,
      [&](const Header& h) {
        signature.clear();
        for (uint32_t i = 0; i < elements.size(); ++i) {
          if (ContainsHeader(elements[i], h)) signature.push_back(i);
        }
        ++classes[signature];
      },
      cap);
  if (!s.ok()) return s;
  return classes;
}

namespace {

// Whether `h` is in the PEC of `node`: inside its element, outside every
// child's element.
bool InPec(const Lattice& lattice, NodeId node, const Header& h) {
  const LatticeNode& n = lattice.node(node);
  if (!ContainsHeader(n.elem, h)) return false;
  for (NodeId c : n.children) {
    if (ContainsHeader(lattice.node(c).elem, h)) return false;
  }
  return true;
}

}  // namespace

absl::StatusOr<std::vector<bool>> BruteForceEmptyPecs(const Lattice& lattice,
                                                      uint64_t cap) {
  const Schema& schema = lattice.schema();
  if (absl::Status s = CheckEnumerable(schema, cap); !s.ok()) return s;
  std::vector<bool> empty(lattice.size(), true);
  for (NodeId id = 0; id < lattice.size(); ++id) {
    // Stops at the first witness, like a solver would.
    struct Found {};
    try {
      absl::Status s = ForEachHeader(
          schema,
          [&](const Header& h) {
            if (InPec(lattice, id, h)) throw Found{};
          },
          cap);
      if (!s.ok()) return s;
    } catch (const Found&) {
      empty[id] = false;
    }
  }
  return empty;
}

absl::StatusOr<std::vector<uint64_t>> BruteForcePecSizes(const Lattice& lattice,
                                                         uint64_t cap) {
  std::vector<uint64_t> sizes(lattice.size(), 0);
  absl::Status s = ForEachHeader(
      lattice.schema(),
      [&](const Header& h) {
        for (NodeId id = 0; id < lattice.size(); ++id) {
          if (InPec(lattice, id, h)) ++sizes[id];
        }
      },
      cap);
  if (!s.ok()) return s;
  return sizes;
}

std::optional<Header> SampleHeader(const Lattice& lattice, NodeId id,
                                   uint64_t cap) {
  std::optional<Header> found;
  struct Found {};
  try {
    absl::Status s = ForEachHeader(
        lattice.schema(),
        [&](const Header& h) {
          if (InPec(lattice, id, h)) {
            found = h;
            throw Found{};
          }
        },
        cap);
    (void)s;
  } catch (const Found&) {
  }
  return found;
}

std::string FormatHeader(const Schema& schema, const Header& header) {
  std::vector<std::string> parts;
  for (size_t i = 0; i < schema.size(); ++i) {
    const Field& f = schema.field(i);
    std::string value;
    switch (f.kind()) {
      case FieldKind::kPrefix:
        if (f.width() == 32) {
          const uint32_t a = static_cast<uint32_t>(header[i]);
          value = absl::StrCat(a >> 24, ".", (a >> 16) & 255, ".",
                               (a >> 8) & 255, ".", a & 255);
        } else {
          value = Uint128ToString(header[i]);
        }
        break;
      case FieldKind::kTbv:
        value = BitString(header[i], f.width());
        break;
      case FieldKind::kValueSet:
      case FieldKind::kOptional:
        value = f.ValueName(static_cast<uint64_t>(header[i]));
        break;
      case FieldKind::kRange:
      case FieldKind::kDisjointRanges:
        value = Uint128ToString(header[i]);
        break;
    }
    parts.push_back(absl::StrCat(f.name(), "=", value));
  }
  return absl::StrJoin(parts, " ");
}

absl::StatusOr<DnfFormula> ParseDnf(absl::string_view text) {
  DnfFormula f;
  std::optional<uint32_t> declared;
  uint32_t largest = 0;
  size_t number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
    std::vector<absl::string_view> tokens =
        absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    if (tokens[0] == "p") {
      uint32_t vars = 0;
      if (tokens.size() < 3 || tokens[1] != "dnf" ||
          !absl::SimpleAtoi(tokens[2], &vars)) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", number, ": expected 'p dnf <vars> <clauses>'"));
      }
      declared = vars;
      continue;
    }
    std::vector<int> clause;
    for (size_t i = 0; i < tokens.size(); ++i) {
      int literal = 0;
      if (!absl::SimpleAtoi(tokens[i], &literal)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line ", number, ": bad literal '", tokens[i], "'"));
      }
      if (literal == 0) {
        if (i + 1 != tokens.size()) {
          return absl::InvalidArgumentError(
              absl::StrCat("line ", number, ": 0 only ends a clause"));
        }
        break;
      }
      largest = std::max(largest, static_cast<uint32_t>(std::abs(literal)));
      clause.push_back(literal);
    }
    f.clauses.push_back(std::move(clause));
  }
  if (declared.has_value()) {
    if (largest > *declared) {
      return absl::InvalidArgumentError(absl::StrCat(
          "variable ", largest, " exceeds the declared count ", *declared));
    }
    f.num_vars = *declared;
  } else {
    f.num_vars = largest;
  }
  return f;
}

std::vector<Tbv> DnfToElements(const DnfFormula& f, size_t* skipped) {
  std::vector<Tbv> out;
  size_t contradictory = 0;
  for (const std::vector<int>& clause : f.clauses) {
    std::string digits(f.num_vars, '*');
    bool satisfiable = true;
    for (int literal : clause) {
      const size_t p = static_cast<size_t>(std::abs(literal)) - 1;
      const char want = literal > 0 ? '1' : '0';
      if (digits[p] != '*' && digits[p] != want) satisfiable = false;
      digits[p] = want;
    }
    if (!satisfiable) {
      ++contradictory;
      continue;
    }
    out.push_back(*Tbv::Parse(digits));
  }
  if (skipped != nullptr) *skipped = contradictory;
  return out;
}

namespace {

// PEC cardinality of the root after inserting the clause vectors, or nullopt
// if some clause is empty (and so covers everything).
absl::StatusOr<std::optional<BigInt>> RootRemainder(const DnfFormula& f) {
  if (f.num_vars == 0) {
    return absl::InvalidArgumentError("formula has no variables");
  }
  SchemaBuilder builder;
  if (absl::Status s =
          builder.AddField(FieldDecl{"x", FieldKind::kTbv, f.num_vars, 0, {}});
      !s.ok()) {
    return s;
  }
  absl::StatusOr<std::shared_ptr<const Schema>> schema = builder.Freeze();
  if (!schema.ok()) return schema.status();
  Lattice lattice(*schema);
  for (Tbv& clause : DnfToElements(f)) {
    absl::StatusOr<NodeId> id = lattice.Insert(Element(std::move(clause)));
    if (!id.ok()) return id.status();
    if (*id == Lattice::kRoot) return std::optional<BigInt>();
  }
  absl::StatusOr<BigInt> root = lattice.PecCardinality(Lattice::kRoot);
  if (!root.ok()) return root.status();
  return std::optional<BigInt>(*std::move(root));
}

}  // namespace

absl::StatusOr<bool> IsTautology(const DnfFormula& f) {
  absl::StatusOr<std::optional<BigInt>> rest = RootRemainder(f);
  if (!rest.ok()) return rest.status();
  return !rest->has_value() || (*rest)->is_zero();
}

absl::StatusOr<BigInt> CountDnfModels(const DnfFormula& f) {
  absl::StatusOr<std::optional<BigInt>> rest = RootRemainder(f);
  if (!rest.ok()) return rest.status();
  if (!rest->has_value()) return Pow2(f.num_vars);
  return Pow2(f.num_vars) - **rest;
}

bool EvaluateDnf(const DnfFormula& f, uint64_t assignment) {
  for (const std::vector<int>& clause : f.clauses) {
    bool all = true;
    for (int literal : clause) {
      const bool value = (assignment >> (std::abs(literal) - 1)) & 1;
      if (value != (literal > 0)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

uint64_t TruthTableModels(const DnfFormula& f) {
  uint64_t models = 0;
  for (uint64_t a = 0; a < (uint64_t{1} << f.num_vars); ++a) {
    if (EvaluateDnf(f, a)) ++models;
  }
  return models;
}

}  // namespace pec
