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

#ifndef KNOWHOW_FORMULA_HPP_
#define KNOWHOW_FORMULA_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace knowhow {

// Primitive constructors in their structural order. Derived connectives
// (or, implies, iff, true, false) exist only in concrete syntax.
enum class Op : std::uint8_t { kProp, kNot, kAnd, kK, kKh };

// Immutable formula of the K/Kh language. Copies share structure.
class Formula {
 public:
  static Formula prop(std::string name);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula knows(Formula operand);
  static Formula knows_how(Formula operand);

  Op op() const { return node_->op; }
  bool is(Op op) const { return node_->op == op; }

  // Proposition name; empty for non-atomic formulas.
  const std::string& name() const { return node_->name; }
  // Operand of a unary constructor, or the left conjunct.
  const Formula& operand() const { return *node_->lhs; }
  const Formula& lhs() const { return *node_->lhs; }
  const Formula& rhs() const { return *node_->rhs; }

  // Number of constructor occurrences (symbols) in the tree.
  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a,
                                          const Formula& b);

 private:
  struct Node {
    Op op;
    std::string name;
    std::unique_ptr<Formula> lhs;
    std::unique_ptr<Formula> rhs;
    std::size_t size = 1;
    std::size_t depth = 0;
    std::size_t hash = 0;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, const Formula* lhs,
                      const Formula* rhs);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Ordered by the structural order, so iteration is deterministic.
using FormulaSet = std::set<Formula>;

// Reserved proposition backing the falsum abbreviation.
inline constexpr std::string_view kFalsumProp = "_f";

Formula falsum();  // _f & ~_f
Formula verum();   // ~falsum()
Formula disjunction(Formula lhs, Formula rhs);
Formula implication(Formula lhs, Formula rhs);
Formula equivalence(Formula lhs, Formula rhs);

bool is_falsum(const Formula& f);

// If f is the expansion of a -> b, returns {a, b}.
bool match_implication(const Formula& f, Formula* antecedent,
                       Formula* consequent);

// Parses concrete syntax. Throws SyntaxError or ReservedWordError.
Formula parse(std::string_view text);

enum class PrintStyle {
  kCanonical,   // primitive constructors only, fully parenthesized
  kAbbreviated  // reconstructs ->, |, <->, true, false where they match
};

std::string print(const Formula& f, PrintStyle style = PrintStyle::kCanonical);

bool is_valid_proposition_name(std::string_view name);
bool is_reserved_word(std::string_view word);

FormulaSet subformulas(const Formula& f);
FormulaSet subformulas(const FormulaSet& fs);

// cl(fs) = fs together with K g for every g in fs. Throws NotSubformulaClosed
// unless fs is closed under immediate subterms.
FormulaSet closure(const FormulaSet& fs);

// Sorted, deduplicated proposition names occurring in f.
std::vector<std::string> propositions(const Formula& f);

}  // namespace knowhow

template <>
struct std::hash<knowhow::Formula> {
  std::size_t operator()(const knowhow::Formula& f) const { return f.hash(); }
};

#endif  // KNOWHOW_FORMULA_HPP_
