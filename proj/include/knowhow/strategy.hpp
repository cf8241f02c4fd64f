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

#ifndef KNOWHOW_STRATEGY_HPP_
#define KNOWHOW_STRATEGY_HPP_

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knowhow/model.hpp"

namespace knowhow {

// Partial map from equivalence classes to actions. Whether every assigned
// action is executable at all members is a property relative to a model;
// see validate().
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(std::map<ClassId, ActionId> assignment)
      : assignment_(std::move(assignment)) {}

  void assign(ClassId c, ActionId a) { assignment_[std::move(c)] = std::move(a); }
  std::optional<ActionId> at(const ClassId& c) const;
  bool defined_at(const ClassId& c) const { return assignment_.contains(c); }

  const std::map<ClassId, ActionId>& assignment() const { return assignment_; }
  std::set<ClassId> domain() const;
  bool empty() const { return assignment_.empty(); }
  std::size_t size() const { return assignment_.size(); }

  // True if this strategy, read as a relation, is contained in `other`.
  bool is_restriction_of(const Strategy& other) const;

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  std::map<ClassId, ActionId> assignment_;
};

// Throws ValidationError(kInvalidStrategy) unless every key names a class of
// q and its action is executable at every member of that class.
void validate(const QuotientGraph& q, const Strategy& sigma);

// JSON object from class representative to action. Keys may name any member
// of a class; they are normalised to the representative.
Strategy parse_strategy(const Model& m, std::string_view text);
std::string strategy_to_json(const Strategy& sigma);

Strategy restrict(const Strategy& sigma, const std::set<ClassId>& domain);

// Finite representation of every possible execution of a strategy from a
// class: the classes reachable along strategy edges.
struct ExecutionGraph {
  ClassId root;
  std::set<ClassId> nodes;
  std::set<std::pair<ClassId, ClassId>> edges;
  std::set<ClassId> leaves;
  // An infinite complete execution exists iff some reachable class lies on a
  // cycle.
  bool has_cycle = false;
};

ExecutionGraph execution_graph(const Model& m, const Strategy& sigma,
                               std::string_view state);
std::set<ClassId> ce_leaf(const Model& m, const Strategy& sigma,
                          std::string_view state);
std::set<ClassId> ce_inner(const Model& m, const Strategy& sigma,
                           std::string_view state);

struct Verdict {
  enum class Failure { kNone, kCycle, kLeafOutsideGoal };

  Failure failure = Failure::kNone;
  std::vector<ClassId> cycle;            // first class repeated at the end
  std::optional<ClassId> leaf;           // leaf class not inside the goal
  std::optional<StateId> offending_state;

  bool ok() const { return failure == Failure::kNone; }
  std::string reason() const;
};

// Checks both Kh conditions: every complete execution from [state] is finite
// and every leaf class lies inside `goal`.
Verdict verify_strategy(const Model& m, const Strategy& sigma,
                        std::string_view state, const StateSet& goal);

namespace detail {

inline constexpr std::size_t kNoAction = std::numeric_limits<std::size_t>::max();

// Action index per class index, kNoAction where undefined.
using IndexedStrategy = std::vector<std::size_t>;

IndexedStrategy index_strategy(const QuotientGraph& q, const Strategy& sigma);
Strategy name_strategy(const QuotientGraph& q, const IndexedStrategy& sigma);

struct Exploration {
  std::vector<bool> reachable;
  std::vector<std::size_t> order;   // reachable classes, DFS preorder
  std::vector<std::size_t> cycle;   // empty when acyclic
};

Exploration explore(const QuotientGraph& q, const IndexedStrategy& sigma,
                    std::size_t root);

Verdict verify(const QuotientGraph& q, const IndexedStrategy& sigma,
               std::size_t root, const StateSet& goal);

}  // namespace detail
}  // namespace knowhow

#endif  // KNOWHOW_STRATEGY_HPP_
