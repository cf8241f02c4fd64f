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

#include "knowhow/testkit.hpp"

#include <algorithm>
#include <map>

#include "knowhow/checker.hpp"
#include "knowhow/error.hpp"

namespace knowhow {

Model random_model(const GenParams& gp) {
  Rng rng(gp.seed);
  const std::size_t n = 1 + rng.below(std::max<std::size_t>(gp.max_states, 1));
  std::vector<StateId> states;
  for (std::size_t i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  std::vector<ActionId> actions;
  for (std::size_t a = 0; a < gp.max_actions; ++a)
    actions.push_back("a" + std::to_string(a));

  std::vector<Transition> ts;
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& a : actions)
      for (std::size_t t = 0; t < n; ++t)
        if (rng.chance(gp.transition_density))
          ts.push_back({states[s], a, states[t]});

  std::vector<std::size_t> block(n);
  for (std::size_t i = 0; i < n; ++i) {
    block[i] = i;
    if (i > 0 && rng.chance(gp.block_merge_prob)) block[i] = block[rng.below(i)];
  }
  std::map<std::size_t, std::vector<StateId>> grouped;
  for (std::size_t i = 0; i < n; ++i) grouped[block[i]].push_back(states[i]);
  std::vector<std::vector<StateId>> equiv;
  for (auto& [_, members] : grouped) equiv.push_back(std::move(members));

  std::map<StateId, std::vector<std::string>> valuation;
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& p : gp.props)
      if (rng.chance(0.5)) valuation[states[s]].push_back(p);
  return Model(states, actions, ts, equiv, valuation);
}

namespace {

Formula grow(Rng& rng, std::size_t depth,
             const std::vector<std::string>& props) {
  auto leaf = [&] { return Formula::prop(props[rng.below(props.size())]); };
  if (depth == 0) return leaf();
  switch (rng.below(5)) {
    case 0:
      return leaf();
    case 1:
      return Formula::negation(grow(rng, depth - 1, props));
    case 2: {
      Formula lhs = grow(rng, depth - 1, props);
      return Formula::conjunction(lhs, grow(rng, depth - 1, props));
    }
    case 3:
      return Formula::knows(grow(rng, depth - 1, props));
    default:
      return Formula::knows_how(grow(rng, depth - 1, props));
  }
}

}  // namespace

Formula random_formula(std::uint64_t seed, std::size_t depth,
                       const std::vector<std::string>& props) {
  if (depth > kMaxRandomFormulaDepth)
    throw TooLarge("random formula depth", depth, kMaxRandomFormulaDepth);
  if (props.empty()) throw Error("random_formula needs at least one proposition");
  Rng rng(seed);
  return grow(rng, depth, props);
}

FuzzReport fuzz_validity(const Formula& f, std::uint64_t trials,
                         const GenParams& gp) {
  const auto start = std::chrono::steady_clock::now();
  FuzzReport report{f, 0, std::nullopt, {}};
  GenParams params = gp;
  for (std::uint64_t i = 0; i < trials; ++i) {
    params.seed = gp.seed + i;
    Model m = random_model(params);
    ++report.trials;
    StateSet ext = extension(m, f);
    if (ext.all()) continue;
    std::size_t s = 0;
    while (ext.test(s)) ++s;
    StateId state = m.state_name(s);
    report.counterexample = Counterexample{std::move(m), std::move(state), i};
    break;
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace knowhow
