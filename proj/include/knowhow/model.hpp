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

#ifndef KNOWHOW_MODEL_HPP_
#define KNOWHOW_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace knowhow {

using StateId = std::string;
using ActionId = std::string;
// Indexed by state position in the owning model or frame.
using StateSet = boost::dynamic_bitset<>;

// An equivalence class, named by its least member state.
struct ClassId {
  std::string representative;

  friend auto operator<=>(const ClassId&, const ClassId&) = default;
  friend bool operator==(const ClassId&, const ClassId&) = default;
};

struct Transition {
  StateId from;
  ActionId action;
  StateId to;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// A finite epistemic transition system: states, actions, labelled
// transitions, an indistinguishability partition and a valuation.
//
// States keep their declaration order; actions are sorted by name; the
// blocks of the partition are sorted by their least member.
class Model {
 public:
  // Throws ValidationError. States absent from every block become
  // singleton blocks.
  Model(std::vector<StateId> states, std::vector<ActionId> actions,
        const std::vector<Transition>& transitions,
        const std::vector<std::vector<StateId>>& equiv,
        const std::map<StateId, std::vector<std::string>>& valuation);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_actions() const { return actions_.size(); }
  const std::vector<StateId>& states() const { return states_; }
  const std::vector<ActionId>& actions() const { return actions_; }
  const StateId& state_name(std::size_t s) const { return states_[s]; }

  std::optional<std::size_t> find_state(std::string_view name) const;
  // Throws UnknownState.
  std::size_t state_index(std::string_view name) const;
  std::optional<std::size_t> find_action(std::string_view name) const;

  const std::vector<std::size_t>& successors(std::size_t s,
                                             std::size_t a) const {
    return succ_[a][s];
  }
  std::vector<Transition> transitions() const;
  std::size_t num_transitions() const;

  // Blocks hold state indices sorted by state name.
  const std::vector<std::vector<std::size_t>>& blocks() const {
    return blocks_;
  }
  std::size_t block_of(std::size_t s) const { return block_of_[s]; }

  const std::set<std::string>& labels(std::size_t s) const {
    return labels_[s];
  }
  bool holds(std::size_t s, const std::string& prop) const {
    return labels_[s].contains(prop);
  }
  StateSet prop_extension(const std::string& prop) const;
  // All propositions true somewhere, sorted.
  std::vector<std::string> propositions() const;

  StateSet make_set(const std::vector<StateId>& names) const;
  std::vector<StateId> names(const StateSet& set) const;

 private:
  std::vector<StateId> states_;
  std::vector<ActionId> actions_;
  std::map<std::string, std::size_t, std::less<>> state_index_;
  std::vector<std::vector<std::vector<std::size_t>>> succ_;  // [a][s]
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<std::set<std::string>> labels_;
};

// Parses the JSON model format. Throws ParseError or ValidationError.
Model load_model(std::string_view text);
Model load_model_file(const std::string& path);
std::string model_to_json(const Model& m, int indent = -1);

// Equivalence classes together with the actions executable at every member
// and the existential lift of each action to classes.
struct QuotientGraph {
  struct Class {
    ClassId id;
    std::vector<std::size_t> members;  // state indices
    // Actions executable at every member, ascending.
    std::vector<std::size_t> uniform_actions;
    // Indexed by action; class indices reachable from some member, ascending.
    std::vector<std::vector<std::size_t>> successors;
  };

  std::vector<ActionId> actions;
  std::vector<Class> classes;           // sorted by id
  std::vector<std::size_t> class_of;    // state index -> class index
  std::vector<StateId> state_names;

  std::size_t num_states() const { return class_of.size(); }
  std::optional<std::size_t> find_class(const ClassId& id) const;
  std::optional<std::size_t> find_action(std::string_view name) const;
  bool is_uniform(std::size_t c, std::size_t a) const;
  // Class indices whose members all lie in `states`.
  std::vector<bool> classes_within(const StateSet& states) const;
};

QuotientGraph quotient(const Model& m);

// Throws UnknownState.
ClassId equiv_class(const Model& m, std::string_view state);

// Quotient plus valuation: everything the semantics looks at.
struct Frame {
  QuotientGraph quotient;
  std::map<std::string, StateSet, std::less<>> valuation;

  std::size_t num_states() const { return quotient.num_states(); }
  StateSet prop_extension(std::string_view prop) const;
};

Frame make_frame(const Model& m);

}  // namespace knowhow

#endif  // KNOWHOW_MODEL_HPP_
