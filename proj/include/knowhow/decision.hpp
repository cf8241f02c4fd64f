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

#ifndef KNOWHOW_DECISION_HPP_
#define KNOWHOW_DECISION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "knowhow/error.hpp"
#include "knowhow/formula.hpp"
#include "knowhow/model.hpp"

namespace knowhow {

struct DecisionOptions {
  // Cap on the members of the closure that are enumerated freely
  // (propositions and K/Kh-headed members); Boolean members are derived.
  std::size_t max_free_members = 20;
  // Confirm UNSAT verdicts with bounded_model_search when the formula is
  // within that search's bounds.
  bool cross_check = true;
  std::size_t search_states = 4;
};

// Every locally coherent in/out assignment over cl(subformulas(f)).
//
// Local coherence: Boolean members agree with their parts; K g in implies g
// in; K g in implies Kh g in; Kh g in implies K Kh g in; Kh g in implies
// Kh K g in (when those members exist).
struct AtomSet {
  std::vector<Formula> members;  // structural order
  std::vector<boost::dynamic_bitset<>> atoms;
  std::size_t free_members = 0;
  std::uint64_t candidates = 0;  // 2^free_members

  std::optional<std::size_t> find(const Formula& g) const;
  bool contains(std::size_t atom, const Formula& g) const;

  std::unordered_map<Formula, std::size_t> index;
};

// Throws TooLarge when the free members exceed options.max_free_members.
AtomSet atoms(const Formula& f, const DecisionOptions& options = {});

enum class TransitionDetail {
  kFull,        // every Delta -phi-> Delta' the construction admits
  kOnePerClass  // one transition per (source state, target class)
};

// Canonical model over the atoms of cl(subformulas(f)).
//
// Atoms whose existential demands cannot be met inside the current atom set
// are pruned until none remain; the survivors are the states. States are
// grouped by their K-members, the actions are the formulas g with Kh g a
// subformula of f, and Delta -g-> Delta' iff Kh g, ~K g in Delta and
// K g in Delta'.
struct CanonicalModel {
  AtomSet universe;                 // locally coherent atoms
  std::vector<std::size_t> states;  // indices into universe.atoms
  std::vector<Formula> actions;     // sorted by printed name
  std::vector<std::string> action_names;
  Frame frame;
  std::size_t pruned = 0;
  // Atoms in one block agree on their Kh-members.
  bool kh_uniform = true;
  std::size_t formula_size = 0;
  // states.size() <= 2^(2 * formula_size)
  bool within_bound = true;

  std::size_t num_states() const { return states.size(); }
  const std::string& state_name(std::size_t s) const {
    return frame.quotient.state_names[s];
  }
  bool contains(std::size_t state, const Formula& g) const {
    return universe.contains(states[state], g);
  }
  Model to_model(TransitionDetail detail = TransitionDetail::kFull) const;
};

CanonicalModel canonical_model(const Formula& f,
                               const DecisionOptions& options = {});

struct SatResult {
  enum class CrossCheck { kNotRun, kConfirmed };

  bool satisfiable = false;
  std::optional<Model> model;
  std::optional<StateId> state;
  std::size_t canonical_states = 0;
  CrossCheck cross_check = CrossCheck::kNotRun;
};

// Raised when the bounded search finds a model for a formula the canonical
// construction reported unsatisfiable.
class InconsistentVerdict : public Error {
 public:
  using Error::Error;
};

SatResult satisfiable(const Formula& f, const DecisionOptions& options = {});
bool valid(const Formula& f, const DecisionOptions& options = {});

struct SearchHit {
  Model model;
  StateId state;
};

inline constexpr std::size_t kMaxSearchStates = 4;
inline constexpr std::size_t kMaxSearchProps = 2;
inline constexpr std::size_t kMaxSearchActions = 2;

// Exhaustive search over models with at most max_states states and
// max_actions actions, smallest first. Throws TooLarge when f has more than
// two propositions or the bounds exceed the limits above.
std::optional<SearchHit> bounded_model_search(
    const Formula& f, std::size_t max_states = kMaxSearchStates,
    std::size_t max_actions = kMaxSearchActions);

// True when bounded_model_search accepts f.
bool within_search_bounds(const Formula& f);

}  // namespace knowhow

#endif  // KNOWHOW_DECISION_HPP_
