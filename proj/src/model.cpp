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

#include "knowhow/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "knowhow/error.hpp"
#include "knowhow/formula.hpp"

namespace knowhow {

using VKind = ValidationError::Kind;

Model::Model(std::vector<StateId> states, std::vector<ActionId> actions,
             const std::vector<Transition>& transitions,
             const std::vector<std::vector<StateId>>& equiv,
             const std::map<StateId, std::vector<std::string>>& valuation)
    : states_(std::move(states)), actions_(std::move(actions)) {
  if (states_.empty())
    throw ValidationError(VKind::kEmptyStateSet, "a model needs a state");
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (!state_index_.emplace(states_[i], i).second)
      throw ValidationError(VKind::kDuplicateName,
                            "state '" + states_[i] + "' declared twice");

  std::sort(actions_.begin(), actions_.end());
  if (auto dup = std::adjacent_find(actions_.begin(), actions_.end());
      dup != actions_.end())
    throw ValidationError(VKind::kDuplicateName,
                          "action '" + *dup + "' declared twice");

  auto lookup = [this](const std::string& name, const char* where) {
    auto it = state_index_.find(name);
    if (it == state_index_.end())
      throw ValidationError(VKind::kUnknownState,
                            "'" + name + "' in " + where);
    return it->second;
  };

  succ_.assign(actions_.size(),
               std::vector<std::vector<std::size_t>>(states_.size()));
  for (const auto& t : transitions) {
    std::size_t from = lookup(t.from, "transitions");
    std::size_t to = lookup(t.to, "transitions");
    auto a = find_action(t.action);
    if (!a)
      throw ValidationError(VKind::kUnknownAction,
                            "'" + t.action + "' in transitions");
    succ_[*a][from].push_back(to);
  }
  for (auto& per_action : succ_)
    for (auto& out : per_action) {
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }

  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(states_.size(), kUnassigned);
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& block : equiv) {
    if (block.empty())
      throw ValidationError(VKind::kEmptyStateSet, "empty block in equiv");
    std::vector<std::size_t> members;
    for (const auto& name : block) {
      std::size_t s = lookup(name, "equiv");
      if (owner[s] != kUnassigned)
        throw ValidationError(VKind::kOverlappingBlocks,
                              "state '" + name + "' appears in two blocks");
      owner[s] = blocks.size();
      members.push_back(s);
    }
    blocks.push_back(std::move(members));
  }
  for (std::size_t s = 0; s < states_.size(); ++s)
    if (owner[s] == kUnassigned) blocks.push_back({s});

  auto by_name = [this](std::size_t a, std::size_t b) {
    return states_[a] < states_[b];
  };
  for (auto& block : blocks) std::sort(block.begin(), block.end(), by_name);
  std::sort(blocks.begin(), blocks.end(),
            [&](const auto& a, const auto& b) { return by_name(a[0], b[0]); });
  blocks_ = std::move(blocks);
  block_of_.assign(states_.size(), 0);
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    for (std::size_t s : blocks_[b]) block_of_[s] = b;

  labels_.assign(states_.size(), {});
  for (const auto& [state, props] : valuation) {
    std::size_t s = lookup(state, "valuation");
    for (const auto& p : props) {
      if (!is_valid_proposition_name(p))
        throw ValidationError(VKind::kInvalidProposition,
                              "'" + p + "' at state '" + state + "'");
      labels_[s].insert(p);
    }
  }
}

std::optional<std::size_t> Model::find_state(std::string_view name) const {
  auto it = state_index_.find(name);
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Model::state_index(std::string_view name) const {
  auto s = find_state(name);
  if (!s) throw UnknownState(std::string(name));
  return *s;
}

std::optional<std::size_t> Model::find_action(std::string_view name) const {
  auto it = std::lower_bound(actions_.begin(), actions_.end(), name);
  if (it == actions_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - actions_.begin());
}

std::vector<Transition> Model::transitions() const {
  std::vector<Transition> out;
  for (std::size_t s = 0; s < states_.size(); ++s)
    for (std::size_t a = 0; a < actions_.size(); ++a)
      for (std::size_t t : succ_[a][s])
        out.push_back({states_[s], actions_[a], states_[t]});
  return out;
}

std::size_t Model::num_transitions() const {
  std::size_t n = 0;
  for (const auto& per_action : succ_)
    for (const auto& out : per_action) n += out.size();
  return n;
}

StateSet Model::prop_extension(const std::string& prop) const {
  StateSet set(states_.size());
  for (std::size_t s = 0; s < states_.size(); ++s)
    if (labels_[s].contains(prop)) set.set(s);
  return set;
}

std::vector<std::string> Model::propositions() const {
  std::set<std::string> all;
  for (const auto& l : labels_) all.insert(l.begin(), l.end());
  return {all.begin(), all.end()};
}

StateSet Model::make_set(const std::vector<StateId>& names) const {
  StateSet set(states_.size());
  for (const auto& n : names) set.set(state_index(n));
  return set;
}

std::vector<StateId> Model::names(const StateSet& set) const {
  std::vector<StateId> out;
  for (auto s = set.find_first(); s != StateSet::npos; s = set.find_next(s))
    out.push_back(states_[s]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using nlohmann::json;

std::vector<std::string> string_array(const json& j, const char* what) {
  if (!j.is_array())
    throw ParseError(std::string("\"") + what + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string())
      throw ParseError(std::string("\"") + what + "\" must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Model load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("model must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "states" && key != "actions" && key != "transitions" &&
        key != "equiv" && key != "valuation")
      throw ParseError("unexpected key \"" + key + "\" in model");
  }
  if (!doc.contains("states")) throw ParseError("model lacks \"states\"");

  std::vector<StateId> states = string_array(doc["states"], "states");
  std::vector<ActionId> actions;
  if (doc.contains("actions")) actions = string_array(doc["actions"], "actions");

  std::vector<Transition> transitions;
  if (doc.contains("transitions")) {
    const auto& ts = doc["transitions"];
    if (!ts.is_array()) throw ParseError("\"transitions\" must be an array");
    for (const auto& t : ts) {
      auto triple = string_array(t, "transitions");
      if (triple.size() != 3)
        throw ParseError("each transition is [from, action, to]");
      transitions.push_back({triple[0], triple[1], triple[2]});
    }
  }

  std::vector<std::vector<StateId>> equiv;
  if (doc.contains("equiv")) {
    const auto& eq = doc["equiv"];
    if (!eq.is_array()) throw ParseError("\"equiv\" must be an array");
    for (const auto& block : eq) equiv.push_back(string_array(block, "equiv"));
  }

  std::map<StateId, std::vector<std::string>> valuation;
  if (doc.contains("valuation")) {
    const auto& val = doc["valuation"];
    if (!val.is_object()) throw ParseError("\"valuation\" must be an object");
    for (const auto& [state, props] : val.items())
      valuation[state] = string_array(props, "valuation");
  }

  return Model(std::move(states), std::move(actions), transitions, equiv,
               valuation);
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

std::string model_to_json(const Model& m, int indent) {
  nlohmann::ordered_json doc;
  doc["states"] = m.states();
  doc["actions"] = m.actions();
  auto ts = nlohmann::ordered_json::array();
  for (const auto& t : m.transitions())
    ts.push_back({t.from, t.action, t.to});
  doc["transitions"] = ts;
  auto eq = nlohmann::ordered_json::array();
  for (const auto& block : m.blocks()) {
    if (block.size() < 2) continue;
    auto names = nlohmann::ordered_json::array();
    for (std::size_t s : block) names.push_back(m.state_name(s));
    eq.push_back(names);
  }
  doc["equiv"] = eq;
  auto val = nlohmann::ordered_json::object();
  for (std::size_t s = 0; s < m.num_states(); ++s)
    if (!m.labels(s).empty())
      val[m.state_name(s)] =
          std::vector<std::string>(m.labels(s).begin(), m.labels(s).end());
  doc["valuation"] = val;
  return doc.dump(indent);
}

std::optional<std::size_t> QuotientGraph::find_class(const ClassId& id) const {
  auto it = std::lower_bound(
      classes.begin(), classes.end(), id,
      [](const Class& c, const ClassId& key) { return c.id < key; });
  if (it == classes.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - classes.begin());
}

std::optional<std::size_t> QuotientGraph::find_action(
    std::string_view name) const {
  for (std::size_t a = 0; a < actions.size(); ++a)
    if (actions[a] == name) return a;
  return std::nullopt;
}

bool QuotientGraph::is_uniform(std::size_t c, std::size_t a) const {
  const auto& ua = classes[c].uniform_actions;
  return std::binary_search(ua.begin(), ua.end(), a);
}

std::vector<bool> QuotientGraph::classes_within(const StateSet& states) const {
  std::vector<bool> out(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    out[c] = std::all_of(classes[c].members.begin(), classes[c].members.end(),
                         [&](std::size_t s) { return states.test(s); });
  return out;
}

QuotientGraph quotient(const Model& m) {
  QuotientGraph q;
  q.actions = m.actions();
  q.state_names = m.states();
  q.class_of.resize(m.num_states());
  for (std::size_t b = 0; b < m.blocks().size(); ++b) {
    const auto& block = m.blocks()[b];
    QuotientGraph::Class c;
    c.id = ClassId{m.state_name(block.front())};
    c.members = block;
    for (std::size_t s : block) q.class_of[s] = b;
    q.classes.push_back(std::move(c));
  }
  for (auto& c : q.classes) {
    c.successors.resize(m.num_actions());
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
      bool uniform = true;
      std::set<std::size_t> succ;
      for (std::size_t s : c.members) {
        const auto& out = m.successors(s, a);
        if (out.empty()) uniform = false;
        for (std::size_t t : out) succ.insert(q.class_of[t]);
      }
      if (uniform) c.uniform_actions.push_back(a);
      c.successors[a].assign(succ.begin(), succ.end());
    }
  }
  return q;
}

ClassId equiv_class(const Model& m, std::string_view state) {
  std::size_t s = m.state_index(state);
  return ClassId{m.state_name(m.blocks()[m.block_of(s)].front())};
}

StateSet Frame::prop_extension(std::string_view prop) const {
  auto it = valuation.find(prop);
  if (it == valuation.end()) return StateSet(num_states());
  return it->second;
}

Frame make_frame(const Model& m) {
  Frame frame{quotient(m), {}};
  for (const auto& p : m.propositions())
    frame.valuation.emplace(p, m.prop_extension(p));
  return frame;
}

}  // namespace knowhow
