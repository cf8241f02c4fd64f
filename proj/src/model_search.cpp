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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "knowhow/checker.hpp"
#include "knowhow/decision.hpp"

namespace knowhow {
namespace {

using Mask = std::uint32_t;

// Formula compiled to a postfix program over state bitmasks.
struct Program {
  struct Node {
    Op op;
    int prop = -1;  // index into props; -1 for the falsum proposition
    std::size_t lhs = 0, rhs = 0;
  };
  std::vector<Node> nodes;
  std::vector<std::string> props;
};

Program compile(const Formula& f) {
  Program p;
  for (const auto& name : propositions(f))
    if (name != kFalsumProp) p.props.push_back(name);
  std::unordered_map<Formula, std::size_t> seen;
  std::function<std::size_t(const Formula&)> emit =
      [&](const Formula& g) -> std::size_t {
    if (auto it = seen.find(g); it != seen.end()) return it->second;
    Program::Node n{g.op()};
    switch (g.op()) {
      case Op::kProp: {
        auto it = std::find(p.props.begin(), p.props.end(), g.name());
        n.prop = it == p.props.end() ? -1 : int(it - p.props.begin());
        break;
      }
      case Op::kAnd:
        n.lhs = emit(g.lhs());
        n.rhs = emit(g.rhs());
        break;
      default:
        n.lhs = emit(g.operand());
        break;
    }
    p.nodes.push_back(n);
    return seen[g] = p.nodes.size() - 1;
  };
  emit(f);
  return p;
}

// Candidate structure: classes with their state masks, and per class a
// list of successor class-sets, one per action.
struct Shape {
  std::size_t k = 0;
  std::vector<Mask> class_states;
  std::vector<Mask> prop_states;
  Mask all = 0;
};

Mask evaluate(const Program& p, const Shape& shape,
              const std::vector<const std::vector<Mask>*>& moves,
              std::vector<Mask>& val) {
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const auto& n = p.nodes[i];
    switch (n.op) {
      case Op::kProp:
        val[i] = n.prop < 0 ? 0 : shape.prop_states[n.prop];
        break;
      case Op::kNot:
        val[i] = ~val[n.lhs] & shape.all;
        break;
      case Op::kAnd:
        val[i] = val[n.lhs] & val[n.rhs];
        break;
      case Op::kK: {
        Mask out = 0;
        for (std::size_t c = 0; c < shape.k; ++c)
          if ((shape.class_states[c] & ~val[n.lhs]) == 0)
            out |= shape.class_states[c];
        val[i] = out;
        break;
      }
      case Op::kKh: {
        Mask win = 0;  // class bitmask
        for (std::size_t c = 0; c < shape.k; ++c)
          if ((shape.class_states[c] & ~val[n.lhs]) == 0) win |= Mask{1} << c;
        for (bool grew = true; grew;) {
          grew = false;
          for (std::size_t c = 0; c < shape.k; ++c) {
            if (win >> c & 1) continue;
            for (Mask succ : *moves[c])
              if ((succ & ~win) == 0) {
                win |= Mask{1} << c;
                grew = true;
                break;
              }
          }
        }
        Mask out = 0;
        for (std::size_t c = 0; c < shape.k; ++c)
          if (win >> c & 1) out |= shape.class_states[c];
        val[i] = out;
        break;
      }
    }
  }
  return val.back();
}

// Per-class move options for k classes: no action, one action with a
// successor set, or two actions with incomparable successor sets. Sets
// containing the class itself never help a Kh goal and are omitted.
std::vector<std::vector<std::vector<Mask>>> move_options(
    std::size_t k, std::size_t max_actions) {
  std::vector<std::vector<std::vector<Mask>>> out(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<Mask> sets;
    for (Mask s = 1; s < (Mask{1} << k); ++s)
      if (!(s >> c & 1)) sets.push_back(s);
    out[c].push_back({});
    if (max_actions >= 1)
      for (Mask s : sets) out[c].push_back({s});
    if (max_actions >= 2)
      for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
          Mask a = sets[i], b = sets[j];
          if ((a & b) == a || (a & b) == b) continue;
          out[c].push_back({a, b});
        }
  }
  return out;
}

SearchHit materialize(const Program& p, const Shape& shape,
                      const std::vector<Mask>& contents,
                      const std::vector<const std::vector<Mask>*>& moves,
                      std::size_t state) {
  std::vector<StateId> states;
  std::vector<std::vector<StateId>> equiv(shape.k);
  std::vector<StateId> first(shape.k);
  std::map<StateId, std::vector<std::string>> valuation;
  for (std::size_t c = 0; c < shape.k; ++c) {
    for (Mask v = 0; v < 32; ++v) {
      if (!(contents[c] >> v & 1)) continue;
      StateId name = "s" + std::to_string(states.size());
      if (equiv[c].empty()) first[c] = name;
      equiv[c].push_back(name);
      for (std::size_t i = 0; i < p.props.size(); ++i)
        if (v >> i & 1) valuation[name].push_back(p.props[i]);
      states.push_back(std::move(name));
    }
  }
  static const char* const kActions[] = {"a", "b"};
  std::vector<ActionId> actions;
  std::vector<Transition> ts;
  for (std::size_t c = 0; c < shape.k; ++c)
    for (std::size_t a = 0; a < moves[c]->size(); ++a) {
      if (actions.size() <= a) actions.push_back(kActions[a]);
      for (const auto& from : equiv[c])
        for (std::size_t d = 0; d < shape.k; ++d)
          if ((*moves[c])[a] >> d & 1) ts.push_back({from, kActions[a], first[d]});
    }
  Model m(states, actions, ts, equiv, valuation);
  return SearchHit{std::move(m), states[state]};
}

}  // namespace

bool within_search_bounds(const Formula& f) {
  std::size_t n = 0;
  for (const auto& name : propositions(f))
    if (name != kFalsumProp) ++n;
  return n <= kMaxSearchProps;
}

std::optional<SearchHit> bounded_model_search(const Formula& f,
                                              std::size_t max_states,
                                              std::size_t max_actions) {
  if (max_states > kMaxSearchStates)
    throw TooLarge("model search states", max_states, kMaxSearchStates);
  if (max_actions > kMaxSearchActions)
    throw TooLarge("model search actions", max_actions, kMaxSearchActions);
  const Program p = compile(f);
  if (p.props.size() > kMaxSearchProps)
    throw TooLarge("model search propositions", p.props.size(),
                   kMaxSearchProps);

  // Without loss of generality a class holds pairwise distinct valuations:
  // duplicates within a class satisfy the same formulas.
  const Mask valuations = Mask{1} << p.props.size();
  const Mask content_limit = Mask{1} << valuations;
  std::vector<Mask> val(p.nodes.size());

  for (std::size_t k = 1; k <= max_states; ++k) {
    const auto options = move_options(k, max_actions);
    std::vector<Mask> contents(k, 1);
    // Nondecreasing content sequences with at most max_states states.
    std::function<std::optional<SearchHit>(std::size_t, std::size_t)> fill =
        [&](std::size_t c, std::size_t used) -> std::optional<SearchHit> {
      if (c == k) {
        Shape shape;
        shape.k = k;
        shape.prop_states.assign(p.props.size(), 0);
        std::size_t next = 0;
        for (std::size_t d = 0; d < k; ++d) {
          Mask cs = 0;
          for (Mask v = 0; v < valuations; ++v) {
            if (!(contents[d] >> v & 1)) continue;
            cs |= Mask{1} << next;
            for (std::size_t i = 0; i < p.props.size(); ++i)
              if (v >> i & 1) shape.prop_states[i] |= Mask{1} << next;
            ++next;
          }
          shape.class_states.push_back(cs);
        }
        shape.all = (Mask{1} << next) - 1;

        std::vector<std::size_t> digit(k, 0);
        std::vector<const std::vector<Mask>*> moves(k);
        for (std::size_t d = 0; d < k; ++d) moves[d] = &options[d][0];
        for (;;) {
          Mask sat = evaluate(p, shape, moves, val);
          if (sat != 0) {
            auto hit = materialize(p, shape, contents, moves,
                                   std::countr_zero(sat));
            if (!eval(hit.model, hit.state, f))
              throw std::logic_error("bounded search evaluator disagrees");
            return hit;
          }
          std::size_t d = k;
          while (d-- > 0) {
            if (++digit[d] < options[d].size()) {
              moves[d] = &options[d][digit[d]];
              break;
            }
            digit[d] = 0;
            moves[d] = &options[d][0];
          }
          if (d == static_cast<std::size_t>(-1)) break;
        }
        return std::nullopt;
      }
      Mask start = c == 0 ? 1 : contents[c - 1];
      for (Mask m = start; m < content_limit; ++m) {
        std::size_t size = std::popcount(m);
        if (used + size + (k - c - 1) > max_states) continue;
        contents[c] = m;
        if (auto hit = fill(c + 1, used + size)) return hit;
      }
      return std::nullopt;
    };
    if (auto hit = fill(0, 0)) return hit;
  }
  return std::nullopt;
}

}  // namespace knowhow
