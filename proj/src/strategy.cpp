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

#include "knowhow/strategy.hpp"

#include "json.hpp"
#include "knowhow/error.hpp"

namespace knowhow {

using VKind = ValidationError::Kind;

std::optional<ActionId> Strategy::at(const ClassId& c) const {
  auto it = assignment_.find(c);
  if (it == assignment_.end()) return std::nullopt;
  return it->second;
}

std::set<ClassId> Strategy::domain() const {
  std::set<ClassId> out;
  for (const auto& [c, a] : assignment_) out.insert(c);
  return out;
}

bool Strategy::is_restriction_of(const Strategy& other) const {
  for (const auto& [c, a] : assignment_) {
    auto b = other.at(c);
    if (!b || *b != a) return false;
  }
  return true;
}

void validate(const QuotientGraph& q, const Strategy& sigma) {
  (void)detail::index_strategy(q, sigma);
}

Strategy parse_strategy(const Model& m, std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("strategy is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("strategy must be a JSON object");
  Strategy sigma;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_string())
      throw ParseError("strategy values must be action names");
    auto s = m.find_state(key);
    if (!s)
      throw ValidationError(VKind::kUnknownState, "'" + key + "' in strategy");
    ClassId c = equiv_class(m, key);
    auto action = value.get<std::string>();
    if (auto prev = sigma.at(c); prev && *prev != action)
      throw ValidationError(VKind::kInvalidStrategy,
                            "class " + c.representative +
                                " assigned two different actions");
    sigma.assign(c, action);
  }
  validate(quotient(m), sigma);
  return sigma;
}

std::string strategy_to_json(const Strategy& sigma) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [c, a] : sigma.assignment()) doc[c.representative] = a;
  return doc.dump();
}

Strategy restrict(const Strategy& sigma, const std::set<ClassId>& domain) {
  Strategy out;
  for (const auto& [c, a] : sigma.assignment())
    if (domain.contains(c)) out.assign(c, a);
  return out;
}

std::string Verdict::reason() const {
  switch (failure) {
    case Failure::kNone:
      return "ok";
    case Failure::kCycle: {
      std::string path;
      for (const auto& c : cycle) {
        if (!path.empty()) path += " -> ";
        path += "[" + c.representative + "]";
      }
      return "infinite execution through cycle " + path;
    }
    case Failure::kLeafOutsideGoal:
      return "leaf class [" + leaf->representative + "] contains state " +
             *offending_state + " outside the goal";
  }
  return "unknown";
}

ExecutionGraph execution_graph(const Model& m, const Strategy& sigma,
                               std::string_view state) {
  std::size_t s = m.state_index(state);
  QuotientGraph q = quotient(m);
  auto indexed = detail::index_strategy(q, sigma);
  std::size_t root = q.class_of[s];
  auto ex = detail::explore(q, indexed, root);

  ExecutionGraph g;
  g.root = q.classes[root].id;
  g.has_cycle = !ex.cycle.empty();
  for (std::size_t c : ex.order) {
    const auto& cls = q.classes[c];
    g.nodes.insert(cls.id);
    if (indexed[c] == detail::kNoAction) {
      g.leaves.insert(cls.id);
      continue;
    }
    for (std::size_t d : cls.successors[indexed[c]])
      g.edges.emplace(cls.id, q.classes[d].id);
  }
  return g;
}

std::set<ClassId> ce_leaf(const Model& m, const Strategy& sigma,
                          std::string_view state) {
  return execution_graph(m, sigma, state).leaves;
}

std::set<ClassId> ce_inner(const Model& m, const Strategy& sigma,
                           std::string_view state) {
  auto g = execution_graph(m, sigma, state);
  std::set<ClassId> inner;
  for (const auto& c : g.nodes)
    if (!g.leaves.contains(c)) inner.insert(c);
  return inner;
}

Verdict verify_strategy(const Model& m, const Strategy& sigma,
                        std::string_view state, const StateSet& goal) {
  std::size_t s = m.state_index(state);
  QuotientGraph q = quotient(m);
  auto indexed = detail::index_strategy(q, sigma);
  return detail::verify(q, indexed, q.class_of[s], goal);
}

namespace detail {

IndexedStrategy index_strategy(const QuotientGraph& q, const Strategy& sigma) {
  IndexedStrategy out(q.classes.size(), kNoAction);
  for (const auto& [c, a] : sigma.assignment()) {
    auto ci = q.find_class(c);
    if (!ci)
      throw ValidationError(VKind::kInvalidStrategy,
                            "'" + c.representative + "' does not name a class");
    auto ai = q.find_action(a);
    if (!ai || !q.is_uniform(*ci, *ai))
      throw ValidationError(VKind::kInvalidStrategy,
                            "action '" + a + "' is not executable at every "
                            "state of [" + c.representative + "]");
    out[*ci] = *ai;
  }
  return out;
}

Strategy name_strategy(const QuotientGraph& q, const IndexedStrategy& sigma) {
  Strategy out;
  for (std::size_t c = 0; c < sigma.size(); ++c)
    if (sigma[c] != kNoAction) out.assign(q.classes[c].id, q.actions[sigma[c]]);
  return out;
}

Exploration explore(const QuotientGraph& q, const IndexedStrategy& sigma,
                    std::size_t root) {
  enum Color : unsigned char { kWhite, kGray, kBlack };
  static const std::vector<std::size_t> kNone;

  Exploration ex;
  ex.reachable.assign(q.classes.size(), false);
  std::vector<Color> color(q.classes.size(), kWhite);
  auto succ_of = [&](std::size_t c) -> const std::vector<std::size_t>& {
    return sigma[c] == kNoAction ? kNone : q.classes[c].successors[sigma[c]];
  };

  // Stack of (class, next successor position).
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  stack.emplace_back(root, 0);
  color[root] = kGray;
  ex.reachable[root] = true;
  ex.order.push_back(root);
  while (!stack.empty()) {
    auto& [c, next] = stack.back();
    const auto& succ = succ_of(c);
    if (next == succ.size()) {
      color[c] = kBlack;
      stack.pop_back();
      continue;
    }
    std::size_t d = succ[next++];
    if (color[d] == kGray) {
      if (ex.cycle.empty()) {
        std::size_t i = 0;
        while (stack[i].first != d) ++i;
        for (; i < stack.size(); ++i) ex.cycle.push_back(stack[i].first);
        ex.cycle.push_back(d);
      }
    } else if (color[d] == kWhite) {
      color[d] = kGray;
      ex.reachable[d] = true;
      ex.order.push_back(d);
      stack.emplace_back(d, 0);
    }
  }
  return ex;
}

Verdict verify(const QuotientGraph& q, const IndexedStrategy& sigma,
               std::size_t root, const StateSet& goal) {
  Verdict v;
  auto ex = explore(q, sigma, root);
  if (!ex.cycle.empty()) {
    v.failure = Verdict::Failure::kCycle;
    for (std::size_t c : ex.cycle) v.cycle.push_back(q.classes[c].id);
    return v;
  }
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    if (!ex.reachable[c] || sigma[c] != kNoAction) continue;
    for (std::size_t s : q.classes[c].members) {
      if (goal.test(s)) continue;
      v.failure = Verdict::Failure::kLeafOutsideGoal;
      v.leaf = q.classes[c].id;
      v.offending_state = q.state_names[s];
      return v;
    }
  }
  return v;
}

}  // namespace detail
}  // namespace knowhow
