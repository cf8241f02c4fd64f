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

#ifndef KNOWHOW_ERROR_HPP_
#define KNOWHOW_ERROR_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace knowhow {

// Base class for every error raised by the library. The C API maps each
// subclass onto a kh_status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected)
      : Error("syntax error at position " + std::to_string(position) +
              ": expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class ReservedWordError : public Error {
 public:
  ReservedWordError(std::size_t position, std::string word)
      : Error("reserved word '" + word + "' used as a proposition at position " +
              std::to_string(position)),
        position_(position),
        word_(std::move(word)) {}

  std::size_t position() const { return position_; }
  const std::string& word() const { return word_; }

 private:
  std::size_t position_;
  std::string word_;
};

class NotSubformulaClosed : public Error {
 public:
  using Error::Error;
};

// Malformed model, strategy or proof file (bad JSON or wrong shape).
class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  enum class Kind {
    kOverlappingBlocks,
    kUnknownState,
    kUnknownAction,
    kEmptyStateSet,
    kDuplicateName,
    kInvalidProposition,
    kInvalidStrategy,
  };

  ValidationError(Kind kind, const std::string& detail)
      : Error(std::string(kind_name(kind)) + ": " + detail), kind_(kind) {}

  Kind kind() const { return kind_; }

  static const char* kind_name(Kind kind) {
    switch (kind) {
      case Kind::kOverlappingBlocks: return "overlapping-blocks";
      case Kind::kUnknownState: return "unknown-state";
      case Kind::kUnknownAction: return "unknown-action";
      case Kind::kEmptyStateSet: return "empty-state-set";
      case Kind::kDuplicateName: return "duplicate-name";
      case Kind::kInvalidProposition: return "invalid-proposition";
      case Kind::kInvalidStrategy: return "invalid-strategy";
    }
    return "validation";
  }

 private:
  Kind kind_;
};

class UnknownState : public Error {
 public:
  explicit UnknownState(const std::string& state)
      : Error("unknown state '" + state + "'"), state_(state) {}
  const std::string& state() const { return state_; }

 private:
  std::string state_;
};

// Raised when an enumeration (strategies, atoms, truth-table rows) would
// exceed its configured cap.
class TooLarge : public Error {
 public:
  TooLarge(const std::string& what, std::uint64_t count, std::uint64_t cap)
      : Error(what + " too large: " + std::to_string(count) + " exceeds cap " +
              std::to_string(cap)),
        count_(count),
        cap_(cap) {}

  std::uint64_t count() const { return count_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t count_;
  std::uint64_t cap_;
};

class SpaceTooLarge : public TooLarge {
 public:
  SpaceTooLarge(std::uint64_t count, std::uint64_t cap)
      : TooLarge("strategy space", count, cap) {}
};

class TooManyAtoms : public TooLarge {
 public:
  TooManyAtoms(std::uint64_t count, std::uint64_t cap)
      : TooLarge("propositional atom set", count, cap) {}
};

}  // namespace knowhow

#endif  // KNOWHOW_ERROR_HPP_
