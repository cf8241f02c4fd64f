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

// Recursive-descent parser for the concrete formula syntax.
//
//   iff     := implies [ "<->" implies ]        (non-associative)
//   implies := or [ "->" implies ]              (right-associative)
//   or      := and { "|" and }
//   and     := unary { "&" unary }
//   unary   := "~" unary | "K" unary | "Kh" unary | atom
//   atom    := prop | "true" | "false" | "(" iff ")"
//
// Derived connectives are expanded while parsing, so the resulting tree only
// uses the five primitive constructors.

#include <cctype>
#include <string>
#include <string_view>

#include "knowhow/error.hpp"
#include "knowhow/formula.hpp"

namespace knowhow {
namespace {

enum class Tok { kProp, kTrue, kFalse, kK, kKh, kNot, kAnd, kOr, kImplies,
                 kIff, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Tok::kEnd, start, {}};
    char c = text_[pos_];
    auto single = [&](Tok kind) {
      ++pos_;
      return Token{kind, start, text_.substr(start, 1)};
    };
    switch (c) {
      case '~': return single(Tok::kNot);
      case '&': return single(Tok::kAnd);
      case '|': return single(Tok::kOr);
      case '(': return single(Tok::kLParen);
      case ')': return single(Tok::kRParen);
      default: break;
    }
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return {Tok::kImplies, start, text_.substr(start, 2)};
    }
    if (text_.substr(pos_, 3) == "<->") {
      pos_ += 3;
      return {Tok::kIff, start, text_.substr(start, 3)};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      std::string_view word = text_.substr(start, pos_ - start);
      if (word == "Kh") return {Tok::kKh, start, word};
      if (word == "K") return {Tok::kK, start, word};
      if (word == "true") return {Tok::kTrue, start, word};
      if (word == "false") return {Tok::kFalse, start, word};
      if (is_valid_proposition_name(word)) return {Tok::kProp, start, word};
      if (word.size() > 1 && word[0] == 'K')
        throw SyntaxError(start + (word.substr(0, 2) == "Kh" ? 2 : 1),
                          "whitespace or '(' after modality");
      throw SyntaxError(start, "proposition name [a-z][a-zA-Z0-9_]*");
    }
    throw SyntaxError(start, "formula token");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  Formula parse_all() {
    Formula f = parse_iff();
    if (cur_.kind != Tok::kEnd)
      throw SyntaxError(cur_.pos, cur_.kind == Tok::kIff
                                      ? "parentheses around chained '<->'"
                                      : "end of input");
    return f;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  static bool starts_operand(Tok kind) {
    switch (kind) {
      case Tok::kProp: case Tok::kTrue: case Tok::kFalse: case Tok::kK:
      case Tok::kKh: case Tok::kNot: case Tok::kLParen:
        return true;
      default:
        return false;
    }
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (cur_.kind != Tok::kIff) return lhs;
    advance();
    Formula rhs = parse_implies();
    return equivalence(std::move(lhs), std::move(rhs));
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (cur_.kind != Tok::kImplies) return lhs;
    advance();
    return implication(std::move(lhs), parse_implies());
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (cur_.kind == Tok::kOr) {
      advance();
      f = disjunction(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (cur_.kind == Tok::kAnd) {
      advance();
      f = Formula::conjunction(std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::kNot:
        advance();
        return Formula::negation(parse_unary());
      case Tok::kK:
      case Tok::kKh: {
        advance();
        if (!starts_operand(cur_.kind))
          throw ReservedWordError(t.pos, std::string(t.text));
        Formula operand = parse_unary();
        return t.kind == Tok::kK ? Formula::knows(std::move(operand))
                                 : Formula::knows_how(std::move(operand));
      }
      default:
        return parse_atom();
    }
  }

  Formula parse_atom() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::kProp:
        advance();
        return Formula::prop(std::string(t.text));
      case Tok::kTrue:
        advance();
        return verum();
      case Tok::kFalse:
        advance();
        return falsum();
      case Tok::kLParen: {
        advance();
        Formula f = parse_iff();
        if (cur_.kind != Tok::kRParen)
          throw SyntaxError(cur_.pos, cur_.kind == Tok::kIff
                                          ? "parentheses around chained '<->'"
                                          : "')'");
        advance();
        return f;
      }
      default:
        throw SyntaxError(t.pos, "formula");
    }
  }

  Lexer lexer_;
  Token cur_{Tok::kEnd, 0, {}};
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace knowhow
