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

#include "pec/query.h"

#include <algorithm>
#include <iterator>
#include <utility>
#include <variant>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace pec {

struct Query::Node {
  Kind kind;
  std::optional<Element> elem;
  std::vector<Query> operands;
};

Query Query::Atom(Element elem) {
  return Query(std::make_shared<const Node>(
      Node{Kind::kAtom, std::move(elem), {}}));
}

Query Query::Not(Query operand) {
  return Query(std::make_shared<const Node>(
      Node{Kind::kNot, std::nullopt, {std::move(operand)}}));
}

Query Query::And(Query lhs, Query rhs) {
  return Query(std::make_shared<const Node>(
      Node{Kind::kAnd, std::nullopt, {std::move(lhs), std::move(rhs)}}));
}

Query Query::Or(Query lhs, Query rhs) {
  return Query(std::make_shared<const Node>(
      Node{Kind::kOr, std::nullopt, {std::move(lhs), std::move(rhs)}}));
}

Query::Kind Query::kind() const { return node_->kind; }
const Element& Query::element() const { return *node_->elem; }
const Query& Query::lhs() const { return node_->operands[0]; }
const Query& Query::rhs() const { return node_->operands[1]; }

std::vector<Element> Query::Atoms() const {
  std::vector<Element> atoms;
  std::vector<const Query*> stack = {this};
  while (!stack.empty()) {
    const Query* q = stack.back();
    stack.pop_back();
    if (q->kind() == Kind::kAtom) {
      atoms.push_back(q->element());
      continue;
    }
    for (auto it = q->node_->operands.rbegin(); it != q->node_->operands.rend();
         ++it) {
      stack.push_back(&*it);
    }
  }
  return atoms;
}

namespace {

bool IsNameChar(char c) {
  return absl::ascii_isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '.' || c == '-' || c == ':' || c == '/';
}

class Parser {
 public:
  explicit Parser(absl::string_view text) : text_(text) {}

  absl::StatusOr<QueryExpr> Parse() {
    absl::StatusOr<QueryExpr> expr = ParseOr();
    if (!expr.ok()) return expr;
    SkipSpace();
    if (pos_ != text_.size()) return Error("unexpected input");
    return expr;
  }

 private:
  absl::Status Error(absl::string_view what) const {
    return absl::InvalidArgumentError(
        absl::StrCat("query: ", what, " at offset ", pos_));
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           absl::ascii_isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Consume(char c) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static QueryExpr Binary(QueryExpr::Kind kind, QueryExpr lhs, QueryExpr rhs) {
    QueryExpr e;
    e.kind = kind;
    e.operands.push_back(std::move(lhs));
    e.operands.push_back(std::move(rhs));
    return e;
  }

  absl::StatusOr<QueryExpr> ParseOr() {
    absl::StatusOr<QueryExpr> lhs = ParseAnd();
    if (!lhs.ok()) return lhs;
    while (Consume('|')) {
      absl::StatusOr<QueryExpr> rhs = ParseAnd();
      if (!rhs.ok()) return rhs;
      lhs = Binary(QueryExpr::Kind::kOr, *std::move(lhs), *std::move(rhs));
    }
    return lhs;
  }

  absl::StatusOr<QueryExpr> ParseAnd() {
    absl::StatusOr<QueryExpr> lhs = ParseUnary();
    if (!lhs.ok()) return lhs;
    while (Consume('&')) {
      absl::StatusOr<QueryExpr> rhs = ParseUnary();
      if (!rhs.ok()) return rhs;
      lhs = Binary(QueryExpr::Kind::kAnd, *std::move(lhs), *std::move(rhs));
    }
    return lhs;
  }

  absl::StatusOr<QueryExpr> ParseUnary() {
    if (++depth_ > kMaxDepth) return Error("nesting too deep");
    absl::StatusOr<QueryExpr> result = ParseUnaryInner();
    --depth_;
    return result;
  }

  absl::StatusOr<QueryExpr> ParseUnaryInner() {
    if (Consume('!')) {
      absl::StatusOr<QueryExpr> operand = ParseUnary();
      if (!operand.ok()) return operand;
      QueryExpr e;
      e.kind = QueryExpr::Kind::kNot;
      e.operands.push_back(*std::move(operand));
      return e;
    }
    if (Consume('(')) {
      absl::StatusOr<QueryExpr> inner = ParseOr();
      if (!inner.ok()) return inner;
      if (!Consume(')')) return Error("expected ')'");
      return inner;
    }
    if (Consume('{')) return ParseLiteral();
    SkipSpace();
    size_t start = pos_;
    while (pos_ < text_.size() && IsNameChar(text_[pos_])) ++pos_;
    if (start == pos_) return Error("expected an atom");
    QueryExpr e;
    e.name = std::string(text_.substr(start, pos_ - start));
    e.kind = e.name == "top" ? QueryExpr::Kind::kTop : QueryExpr::Kind::kName;
    return e;
  }

  // After '{': field '=' value (',' field '=' value)* '}'.
  absl::StatusOr<QueryExpr> ParseLiteral() {
    QueryExpr e;
    e.kind = QueryExpr::Kind::kLiteral;
    if (Consume('}')) return e;
    while (true) {
      SkipSpace();
      size_t start = pos_;
      while (pos_ < text_.size() && IsNameChar(text_[pos_])) ++pos_;
      if (start == pos_) return Error("expected a field name");
      std::string field(text_.substr(start, pos_ - start));
      if (!Consume('=')) return Error("expected '='");
      SkipSpace();
      start = pos_;
      int depth = 0;
      while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (depth == 0 && (c == ',' || c == '}')) break;
        if (c == '{' || c == '[') ++depth;
        if (c == '}' || c == ']' || c == ')') --depth;
        ++pos_;
      }
      std::string value(
          absl::StripAsciiWhitespace(text_.substr(start, pos_ - start)));
      if (value.empty()) return Error("empty field value");
      e.literal.emplace_back(std::move(field), std::move(value));
      if (Consume('}')) return e;
      if (!Consume(',')) return Error("expected ',' or '}'");
    }
  }

  static constexpr int kMaxDepth = 512;
  absl::string_view text_;
  size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

absl::StatusOr<QueryExpr> ParseQueryText(absl::string_view text) {
  return Parser(text).Parse();
}

absl::Status NoteQueryValues(SchemaBuilder& builder, const QueryExpr& expr) {
  if (expr.kind == QueryExpr::Kind::kLiteral) {
    return NoteMatchValues(builder, expr.literal);
  }
  for (const QueryExpr& operand : expr.operands) {
    if (absl::Status s = NoteQueryValues(builder, operand); !s.ok()) return s;
  }
  return absl::OkStatus();
}

absl::StatusOr<Query> BindQuery(const QueryExpr& expr, const Schema& schema,
                                const NamedElements& names) {
  switch (expr.kind) {
    case QueryExpr::Kind::kTop:
      return Query::Atom(Top(schema));
    case QueryExpr::Kind::kName: {
      auto it = names.find(expr.name);
      if (it == names.end()) {
        return absl::NotFoundError(
            absl::StrCat("query: unknown name '", expr.name, "'"));
      }
      return Query::Atom(it->second);
    }
    case QueryExpr::Kind::kLiteral: {
      absl::StatusOr<Element> elem = ParseMatch(schema, expr.literal);
      if (!elem.ok()) return elem.status();
      return Query::Atom(*std::move(elem));
    }
    case QueryExpr::Kind::kNot: {
      absl::StatusOr<Query> operand =
          BindQuery(expr.operands[0], schema, names);
      if (!operand.ok()) return operand;
      return Query::Not(*std::move(operand));
    }
    case QueryExpr::Kind::kAnd:
    case QueryExpr::Kind::kOr: {
      absl::StatusOr<Query> lhs = BindQuery(expr.operands[0], schema, names);
      if (!lhs.ok()) return lhs;
      absl::StatusOr<Query> rhs = BindQuery(expr.operands[1], schema, names);
      if (!rhs.ok()) return rhs;
      return expr.kind == QueryExpr::Kind::kAnd
                 ? Query::And(*std::move(lhs), *std::move(rhs))
                 : Query::Or(*std::move(lhs), *std::move(rhs));
    }
  }
  return absl::InternalError("unknown query kind");
}

PecSet Union(const PecSet& a, const PecSet& b) {
  PecSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

PecSet Intersection(const PecSet& a, const PecSet& b) {
  PecSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

PecSet Difference(const PecSet& a, const PecSet& b) {
  PecSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

absl::Status Prepare(Lattice& lattice, const Query& q) {
  for (const Element& atom : q.Atoms()) {
    if (lattice.Find(atom).has_value()) continue;
    if (absl::StatusOr<NodeId> id = lattice.Insert(atom); !id.ok()) {
      return id.status();
    }
  }
  return absl::OkStatus();
}

namespace {

absl::StatusOr<PecSet> Convert(const Lattice& lattice, const Query& q) {
  switch (q.kind()) {
    case Query::Kind::kAtom: {
      if (absl::Status s = Validate(lattice.schema(), q.element()); !s.ok()) {
        return s;
      }
      std::optional<NodeId> n = lattice.Find(q.element());
      if (!n.has_value()) {
        return absl::NotFoundError(
            absl::StrCat("query atom ", ToString(q.element()),
                         " has no lattice node; prepare the query first"));
      }
      return lattice.Subtree(*n);
    }
    case Query::Kind::kNot: {
      absl::StatusOr<PecSet> operand = Convert(lattice, q.lhs());
      if (!operand.ok()) return operand;
      return Difference(lattice.Subtree(Lattice::kRoot), *operand);
    }
    case Query::Kind::kAnd:
    case Query::Kind::kOr: {
      absl::StatusOr<PecSet> g = Convert(lattice, q.lhs());
      if (!g.ok()) return g;
      absl::StatusOr<PecSet> h = Convert(lattice, q.rhs());
      if (!h.ok()) return h;
      return q.kind() == Query::Kind::kAnd ? Intersection(*g, *h)
                                           : Union(*g, *h);
    }
  }
  return absl::InternalError("unknown query kind");
}

}  // namespace

absl::StatusOr<PecSet> ConvertToPecs(const Lattice& lattice, const Query& q) {
  if (!lattice.settled()) {
    return absl::FailedPreconditionError("lattice is not settled");
  }
  return Convert(lattice, q);
}

absl::StatusOr<PecSet> NonEmpty(const Lattice& lattice, const PecSet& s) {
  PecSet out;
  for (NodeId id : s) {
    absl::StatusOr<bool> empty = lattice.IsEmptyPec(id);
    if (!empty.ok()) return empty.status();
    if (!*empty) out.push_back(id);
  }
  return out;
}

}  // namespace pec
