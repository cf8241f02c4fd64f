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

#ifndef KNOWHOW_TESTKIT_HPP_
#define KNOWHOW_TESTKIT_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "knowhow/formula.hpp"
#include "knowhow/model.hpp"

namespace knowhow {

// Generation is driven by std::mt19937_64 (the 64-bit Mersenne Twister,
// MT19937-64) with the derived draws below defined on its raw output, so a
// seed fixes the result on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n) by reduction modulo n; n > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  // Top 53 bits as a double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

struct GenParams {
  std::uint64_t seed = 0;
  std::size_t max_states = 6;
  std::size_t max_actions = 2;
  std::vector<std::string> props = {"p", "q"};
  double transition_density = 0.3;
  double block_merge_prob = 0.3;
};

// States s0..s(n-1) with n uniform in [1, max_states]; actions a0..; each
// (s, a, t) is a transition with probability transition_density; each state
// joins the block of a uniformly chosen earlier state with probability
// block_merge_prob; each proposition holds at each state with probability 1/2.
Model random_model(const GenParams& gp);

inline constexpr std::size_t kMaxRandomFormulaDepth = 6;

// Uniform choice among Prop, Not, And, K, Kh at every node above depth 0.
Formula random_formula(std::uint64_t seed, std::size_t depth,
                       const std::vector<std::string>& props = {"p", "q"});

struct Counterexample {
  Model model;
  StateId state;
  std::uint64_t trial = 0;
};

struct FuzzReport {
  Formula formula;
  std::uint64_t trials = 0;  // trials run
  std::optional<Counterexample> counterexample;
  std::chrono::nanoseconds elapsed{0};
};

// Evaluates f at every state of `trials` random models; trial i uses seed
// gp.seed + i. Stops at the first falsifying state.
FuzzReport fuzz_validity(const Formula& f, std::uint64_t trials,
                         const GenParams& gp = {});

}  // namespace knowhow

#endif  // KNOWHOW_TESTKIT_HPP_
