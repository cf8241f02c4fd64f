// Copyright 2026 The knowhow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "knowhow/formula.hpp"

#include <functional>

#include "knowhow/error.hpp"

namespace knowhow {
namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Op op, std::string name, const Formula* lhs,
                      const Formula* rhs) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->hash = mix(0, static_cast<std::size_t>(op));
  if (op == Op::kProp) {
    node->hash = mix(node->hash, std::hash<std::string>{}(name));
    node->name = std::move(name);
  }
  if (lhs != nullptr) {
    node->lhs = std::make_unique<Formula>(*lhs);
    node->size += lhs->size();
    node->depth = lhs->depth() + 1;
    node->hash = mix(node->hash, lhs->hash());
  }
  if (rhs != nullptr) {
    node->rhs = std::make_unique<Formula>(*rhs);
    node->size += rhs->size();
    node->depth = std::max(node->depth, rhs->depth() + 1);
    node->hash = mix(node->hash, rhs->hash());
  }
  return Formula(std::move(node));
}

Formula Formula::prop(std::string name) {
  return make(Op::kProp, std::move(name), nullptr, nullptr);
}
Formula Formula::negation(Formula operand) {
  return make(Op::kNot, {}, &operand, nullptr);
}
Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return make(Op::kAnd, {}, &lhs, &rhs);
}
Formula Formula::knows(Formula operand) {
  return make(Op::kK, {}, &operand, nullptr);
}
Formula Formula::knows_how(Formula operand) {
  return make(Op::kKh, {}, &operand, nullptr);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.op() != b.op())
    return false;
  switch (a.op()) {
    case Op::kProp:
      return a.name() == b.name();
    case Op::kAnd:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    default:
      return a.operand() == b.operand();
  }
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  switch (a.op()) {
    case Op::kProp:
      return a.name().compare(b.name()) <=> 0;
    case Op::kAnd:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
    default:
      return a.operand() <=> b.operand();
  }
}

Formula falsum() {
  static const Formula bottom = Formula::conjunction(
      Formula::prop(std::string(kFalsumProp)),
      Formula::negation(Formula::prop(std::string(kFalsumProp))));
  return bottom;
}

Formula verum() { return Formula::negation(falsum()); }

Formula disjunction(Formula lhs, Formula rhs) {
  return Formula::negation(Formula::conjunction(
      Formula::negation(std::move(lhs)), Formula::negation(std::move(rhs))));
}

Formula implication(Formula lhs, Formula rhs) {
  return Formula::negation(
      Formula::conjunction(std::move(lhs), Formula::negation(std::move(rhs))));
}

Formula equivalence(Formula lhs, Formula rhs) {
  return Formula::conjunction(implication(lhs, rhs), implication(rhs, lhs));
}

bool is_falsum(const Formula& f) { return f == falsum(); }

bool match_implication(const Formula& f, Formula* antecedent,
                       Formula* consequent) {
  if (!f.is(Op::kNot) || !f.operand().is(Op::kAnd) ||
      !f.operand().rhs().is(Op::kNot))
    return false;
  if (antecedent != nullptr) *antecedent = f.operand().lhs();
  if (consequent != nullptr) *consequent = f.operand().rhs().operand();
  return true;
}

namespace {

void print_canonical(const Formula& f, std::string& out) {
  if (is_falsum(f)) {
    out += "false";
    return;
  }
  switch (f.op()) {
    case Op::kProp:
      out += f.name();
      return;
    case Op::kNot:
      out += "(~";
      print_canonical(f.operand(), out);
      out += ')';
      return;
    case Op::kAnd:
      out += '(';
      print_canonical(f.lhs(), out);
      out += " & ";
      print_canonical(f.rhs(), out);
      out += ')';
      return;
    case Op::kK:
      out += "K ";
      print_canonical(f.operand(), out);
      return;
    case Op::kKh:
      out += "Kh ";
      print_canonical(f.operand(), out);
      return;
  }
}

void print_abbreviated(const Formula& f, std::string& out) {
  if (is_falsum(f)) {
    out += "false";
    return;
  }
  if (f.is(Op::kNot) && is_falsum(f.operand())) {
    out += "true";
    return;
  }
  auto binary = [&out](const Formula& a, const char* op, const Formula& b) {
    out += '(';
    print_abbreviated(a, out);
    out += op;
    print_abbreviated(b, out);
    out += ')';
  };
  Formula a = f, b = f, c = f, d = f;
  if (f.is(Op::kAnd) && match_implication(f.lhs(), &a, &b) &&
      match_implication(f.rhs(), &c, &d) && a == d && b == c) {
    binary(a, " <-> ", b);
    return;
  }
  if (f.is(Op::kNot) && f.operand().is(Op::kAnd) &&
      f.operand().lhs().is(Op::kNot) && f.operand().rhs().is(Op::kNot)) {
    binary(f.operand().lhs().operand(), " | ", f.operand().rhs().operand());
    return;
  }
  if (match_implication(f, &a, &b)) {
    binary(a, " -> ", b);
    return;
  }
  switch (f.op()) {
    case Op::kProp:
      out += f.name();
      return;
    case Op::kNot:
      out += "(~";
      print_abbreviated(f.operand(), out);
      out += ')';
      return;
    case Op::kAnd:
      binary(f.lhs(), " & ", f.rhs());
      return;
    case Op::kK:
      out += "K ";
      print_abbreviated(f.operand(), out);
      return;
    case Op::kKh:
      out += "Kh ";
      print_abbreviated(f.operand(), out);
      return;
  }
}

void collect_subformulas(const Formula& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  switch (f.op()) {
    case Op::kProp:
      return;
    case Op::kAnd:
      collect_subformulas(f.lhs(), out);
      collect_subformulas(f.rhs(), out);
      return;
    default:
      collect_subformulas(f.operand(), out);
      return;
  }
}

}  // namespace

std::string print(const Formula& f, PrintStyle style) {
  std::string out;
  if (style == PrintStyle::kCanonical)
    print_canonical(f, out);
  else
    print_abbreviated(f, out);
  return out;
}

bool is_reserved_word(std::string_view word) {
  return word == "K" || word == "Kh" || word == "true" || word == "false";
}

bool is_valid_proposition_name(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return !is_reserved_word(name);
}

FormulaSet subformulas(const Formula& f) {
  FormulaSet out;
  collect_subformulas(f, out);
  return out;
}

FormulaSet subformulas(const FormulaSet& fs) {
  FormulaSet out;
  for (const auto& f : fs) collect_subformulas(f, out);
  return out;
}

FormulaSet closure(const FormulaSet& fs) {
  for (const auto& f : fs) {
    bool closed = true;
    switch (f.op()) {
      case Op::kProp:
        break;
      case Op::kAnd:
        closed = fs.contains(f.lhs()) && fs.contains(f.rhs());
        break;
      default:
        closed = fs.contains(f.operand());
        break;
    }
    if (!closed)
      throw NotSubformulaClosed("set is not subformula-closed: missing a "
                                "direct subformula of " + print(f));
  }
  FormulaSet out = fs;
  for (const auto& f : fs) out.insert(Formula::knows(f));
  return out;
}

std::vector<std::string> propositions(const Formula& f) {
  std::set<std::string> names;
  for (const auto& g : subformulas(f))
    if (g.is(Op::kProp)) names.insert(g.name());
  return {names.begin(), names.end()};
}

}  // namespace knowhow
