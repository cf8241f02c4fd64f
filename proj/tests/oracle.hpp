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

// Reference semantics written directly from the definitions: classes and
// uniform actions are recomputed from raw transitions, and Kh is decided by
// trying every positional strategy and walking its executions recursively.
// Nothing here calls the checker or strategy modules.

#ifndef KNOWHOW_TESTS_ORACLE_HPP_
#define KNOWHOW_TESTS_ORACLE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "knowhow/formula.hpp"
#include "knowhow/model.hpp"

namespace oracle {

struct NaiveModel {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::set<std::tuple<int, int, int>> edges;  // (from, action, to)
  std::vector<int> cls;                       // state -> class index
  std::vector<std::vector<int>> members;      // class -> states
  std::vector<std::set<std::string>> labels;

  int state(const std::string& name) const {
    return int(std::find(states.begin(), states.end(), name) - states.begin());
  }
  int action(const std::string& name) const {
    return int(std::find(actions.begin(), actions.end(), name) -
               actions.begin());
  }

  bool executable(int s, int a) const {
    for (const auto& [x, b, t] : edges)
      if (x == s && b == a) return true;
    return false;
  }
  bool uniform(int c, int a) const {
    for (int s : members[c])
      if (!executable(s, a)) return false;
    return true;
  }
  std::set<int> succ(int c, int a) const {
    std::set<int> out;
    for (const auto& [x, b, t] : edges)
      if (b == a && cls[x] == c) out.insert(cls[t]);
    return out;
  }
};

// Classes are read from the block partition of the model; they are listed
// by least member name.
inline NaiveModel naive(const knowhow::Model& m) {
  NaiveModel n;
  n.states = m.states();
  n.actions = m.actions();
  for (const auto& t : m.transitions())
    n.edges.insert({n.state(t.from), n.action(t.action), n.state(t.to)});
  n.cls.assign(n.states.size(), -1);
  std::vector<std::vector<int>> blocks;
  for (const auto& b : m.blocks()) {
    std::vector<int> members;
    for (std::size_t s : b) members.push_back(int(s));
    std::sort(members.begin(), members.end(), [&](int x, int y) {
      return n.states[x] < n.states[y];
    });
    blocks.push_back(members);
  }
  std::sort(blocks.begin(), blocks.end(), [&](const auto& x, const auto& y) {
    return n.states[x.front()] < n.states[y.front()];
  });
  for (std::size_t c = 0; c < blocks.size(); ++c)
    for (int s : blocks[c]) n.cls[s] = int(c);
  n.members = blocks;
  for (std::size_t s = 0; s < n.states.size(); ++s)
    n.labels.push_back(m.labels(s));
  return n;
}

// Positional strategy: class -> action index, -1 where undefined.
using Plan = std::vector<int>;

// Both Kh conditions for `plan` from class `root`: no reachable cycle, and
// every reachable class outside the domain lies inside the goal.
inline bool plan_works(const NaiveModel& n, const Plan& plan, int root,
                       const std::vector<bool>& goal) {
  std::vector<int> on_path(n.members.size(), 0);
  std::function<bool(int)> walk = [&](int c) -> bool {
    if (on_path[c]) return false;  // an infinite execution
    if (plan[c] < 0) {
      for (int s : n.members[c])
        if (!goal[s]) return false;
      return true;
    }
    on_path[c] = 1;
    for (int d : n.succ(c, plan[c]))
      if (!walk(d)) return false;
    on_path[c] = 0;
    return true;
  };
  return walk(root);
}

inline std::size_t strategy_count(const NaiveModel& n) {
  std::size_t count = 1;
  for (std::size_t c = 0; c < n.members.size(); ++c) {
    std::size_t options = 1;
    for (std::size_t a = 0; a < n.actions.size(); ++a)
      if (n.uniform(int(c), int(a))) ++options;
    count *= options;
  }
  return count;
}

inline bool naive_kh(const NaiveModel& n, int state,
                     const std::vector<bool>& goal) {
  const int k = int(n.members.size());
  std::vector<std::vector<int>> options(k);
  for (int c = 0; c < k; ++c) {
    options[c].push_back(-1);
    for (int a = 0; a < int(n.actions.size()); ++a)
      if (n.uniform(c, a)) options[c].push_back(a);
  }
  Plan plan(k, -1);
  std::function<bool(int)> choose = [&](int c) -> bool {
    if (c == k) return plan_works(n, plan, n.cls[state], goal);
    for (int a : options[c]) {
      plan[c] = a;
      if (choose(c + 1)) return true;
    }
    plan[c] = -1;
    return false;
  };
  return choose(0);
}

inline bool naive_eval(const NaiveModel& n, int s, const knowhow::Formula& f) {
  using knowhow::Op;
  auto everywhere = [&](const knowhow::Formula& g) {
    std::vector<bool> ext(n.states.size());
    for (std::size_t t = 0; t < n.states.size(); ++t)
      ext[t] = naive_eval(n, int(t), g);
    return ext;
  };
  switch (f.op()) {
    case Op::kProp:
      return n.labels[s].count(f.name()) > 0;
    case Op::kNot:
      return !naive_eval(n, s, f.operand());
    case Op::kAnd:
      return naive_eval(n, s, f.lhs()) && naive_eval(n, s, f.rhs());
    case Op::kK:
      for (int t : n.members[n.cls[s]])
        if (!naive_eval(n, t, f.operand())) return false;
      return true;
    case Op::kKh:
      return naive_kh(n, s, everywhere(f.operand()));
  }
  return false;
}

// Every formula over `props` with at most `max_size` constructors.
inline std::vector<knowhow::Formula> all_formulas(
    const std::vector<std::string>& props, std::size_t max_size) {
  using knowhow::Formula;
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  for (const auto& p : props) by_size[1].push_back(Formula::prop(p));
  for (std::size_t n = 2; n <= max_size; ++n) {
    for (const auto& g : by_size[n - 1]) {
      by_size[n].push_back(Formula::negation(g));
      by_size[n].push_back(Formula::knows(g));
      by_size[n].push_back(Formula::knows_how(g));
    }
    for (std::size_t l = 1; l + 1 < n; ++l)
      for (const auto& a : by_size[l])
        for (const auto& b : by_size[n - 1 - l])
          by_size[n].push_back(Formula::conjunction(a, b));
  }
  std::vector<Formula> out;
  for (const auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

// Every formula over `props` of modal/Boolean depth at most `max_depth`.
inline std::vector<knowhow::Formula> formulas_by_depth(
    const std::vector<std::string>& props, std::size_t max_depth) {
  using knowhow::Formula;
  std::vector<Formula> level;
  for (const auto& p : props) level.push_back(Formula::prop(p));
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::vector<Formula> next;
    for (const auto& p : props) next.push_back(Formula::prop(p));
    for (const auto& g : level) {
      next.push_back(Formula::negation(g));
      next.push_back(Formula::knows(g));
      next.push_back(Formula::knows_how(g));
    }
    for (const auto& a : level)
      for (const auto& b : level) next.push_back(Formula::conjunction(a, b));
    level = std::move(next);
  }
  return level;
}

// Truth-table tautology check with K-, Kh- and proposition-headed
// subformulas treated as independent atoms.
inline void opaque_atoms(const knowhow::Formula& f,
                         std::vector<knowhow::Formula>& out) {
  using knowhow::Op;
  if (f.is(Op::kNot)) return opaque_atoms(f.operand(), out);
  if (f.is(Op::kAnd)) {
    opaque_atoms(f.lhs(), out);
    opaque_atoms(f.rhs(), out);
    return;
  }
  for (const auto& g : out)
    if (g == f) return;
  out.push_back(f);
}

inline bool row_value(const knowhow::Formula& f,
                      const std::vector<knowhow::Formula>& atoms,
                      std::uint64_t row) {
  using knowhow::Op;
  if (f.is(Op::kNot)) return !row_value(f.operand(), atoms, row);
  if (f.is(Op::kAnd))
    return row_value(f.lhs(), atoms, row) && row_value(f.rhs(), atoms, row);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == f) return (row >> i) & 1;
  return false;
}

inline bool naive_tautology(const knowhow::Formula& f) {
  std::vector<knowhow::Formula> atoms;
  opaque_atoms(f, atoms);
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << atoms.size()); ++row)
    if (!row_value(f, atoms, row)) return false;
  return true;
}

}  // namespace oracle

#endif  // KNOWHOW_TESTS_ORACLE_HPP_
