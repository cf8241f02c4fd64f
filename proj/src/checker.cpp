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

#include "knowhow/checker.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "knowhow/error.hpp"

namespace knowhow {
namespace detail {

IndexedForcing force(const QuotientGraph& q, const StateSet& goal) {
  const std::size_t n = q.classes.size();
  IndexedForcing r;
  r.winning = q.classes_within(goal);
  r.witness.assign(n, kNoAction);
  r.stage.assign(n, kNever);
  for (std::size_t c = 0; c < n; ++c)
    if (r.winning[c]) r.stage[c] = 0;

  for (std::size_t round = 1;; ++round) {
    std::vector<bool> before = r.winning;
    bool grew = false;
    for (std::size_t c = 0; c < n; ++c) {
      if (before[c]) continue;
      for (std::size_t a : q.classes[c].uniform_actions) {
        const auto& succ = q.classes[c].successors[a];
        bool forced = std::all_of(succ.begin(), succ.end(),
                                  [&](std::size_t d) { return before[d]; });
        if (!forced) continue;
        r.winning[c] = true;
        r.witness[c] = a;
        r.stage[c] = round;
        grew = true;
        break;
      }
    }
    if (!grew) break;
  }
  return r;
}

StateSet states_of(const QuotientGraph& q, const std::vector<bool>& classes) {
  StateSet out(q.num_states());
  for (std::size_t c = 0; c < q.classes.size(); ++c)
    if (classes[c])
      for (std::size_t s : q.classes[c].members) out.set(s);
  return out;
}

BruteForceResult brute_force(const QuotientGraph& q, std::size_t root,
                             const StateSet& goal, std::uint64_t cap) {
  BruteForceResult r;
  const std::size_t n = q.classes.size();
  std::uint64_t space = 1;
  for (const auto& c : q.classes) {
    std::uint64_t radix = 1 + c.uniform_actions.size();
    if (space > cap / radix) throw SpaceTooLarge(space * radix, cap);
    space *= radix;
  }
  if (space > cap) throw SpaceTooLarge(space, cap);
  r.space = space;

  // Mixed-radix counter; digit 0 leaves the class out of the domain.
  std::vector<std::size_t> digit(n, 0);
  IndexedStrategy sigma(n, kNoAction);
  for (std::uint64_t i = 0; i < space; ++i) {
    ++r.tried;
    if (verify(q, sigma, root, goal).ok()) {
      r.holds = true;
      r.witness = name_strategy(q, sigma);
      return r;
    }
    for (std::size_t c = n; c-- > 0;) {
      const auto& ua = q.classes[c].uniform_actions;
      if (++digit[c] <= ua.size()) {
        sigma[c] = ua[digit[c] - 1];
        break;
      }
      digit[c] = 0;
      sigma[c] = kNoAction;
    }
  }
  return r;
}

}  // namespace detail

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Frame& frame) : frame_(frame) {}

  const StateSet& eval(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    StateSet result = compute(f);
    return memo_.emplace(f, std::move(result)).first->second;
  }

 private:
  StateSet compute(const Formula& f) {
    const auto& q = frame_.quotient;
    switch (f.op()) {
      case Op::kProp:
        return frame_.prop_extension(f.name());
      case Op::kNot:
        return ~eval(f.operand());
      case Op::kAnd:
        return eval(f.lhs()) & eval(f.rhs());
      case Op::kK:
        return detail::states_of(q, q.classes_within(eval(f.operand())));
      case Op::kKh:
        return detail::states_of(q, detail::force(q, eval(f.operand())).winning);
    }
    return StateSet(frame_.num_states());
  }

  const Frame& frame_;
  std::unordered_map<Formula, StateSet> memo_;
};

}  // namespace

StateSet extension(const Frame& frame, const Formula& f) {
  return Evaluator(frame).eval(f);
}

StateSet extension(const Model& m, const Formula& f) {
  return extension(make_frame(m), f);
}

bool eval(const Frame& frame, std::size_t state, const Formula& f) {
  return extension(frame, f).test(state);
}

bool eval(const Model& m, std::string_view state, const Formula& f) {
  std::size_t s = m.state_index(state);
  return extension(m, f).test(s);
}

ForcingResult kh_forcing(const Model& m, const StateSet& goal) {
  QuotientGraph q = quotient(m);
  auto r = detail::force(q, goal);
  ForcingResult out;
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    if (!r.winning[c]) continue;
    out.winning.insert(q.classes[c].id);
    out.stage[q.classes[c].id] = r.stage[c];
  }
  out.witness = detail::name_strategy(q, r.witness);
  return out;
}

std::optional<Strategy> synthesize(const Model& m, std::string_view state,
                                   const Formula& f) {
  std::size_t s = m.state_index(state);
  Frame frame = make_frame(m);
  const auto& q = frame.quotient;
  auto r = detail::force(q, extension(frame, f));
  std::size_t root = q.class_of[s];
  if (!r.winning[root]) return std::nullopt;

  std::set<ClassId> reached;
  std::vector<bool> seen(q.classes.size(), false);
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    std::size_t c = queue.front();
    queue.pop_front();
    if (r.witness[c] == detail::kNoAction) continue;
    reached.insert(q.classes[c].id);
    for (std::size_t d : q.classes[c].successors[r.witness[c]])
      if (!seen[d]) {
        seen[d] = true;
        queue.push_back(d);
      }
  }
  return restrict(detail::name_strategy(q, r.witness), reached);
}

BruteForceResult brute_force_kh(const Model& m, std::string_view state,
                                const StateSet& goal, std::uint64_t cap) {
  std::size_t s = m.state_index(state);
  QuotientGraph q = quotient(m);
  return detail::brute_force(q, q.class_of[s], goal, cap);
}

}  // namespace knowhow
