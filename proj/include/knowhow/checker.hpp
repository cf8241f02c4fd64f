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

#ifndef KNOWHOW_CHECKER_HPP_
#define KNOWHOW_CHECKER_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "knowhow/formula.hpp"
#include "knowhow/model.hpp"
#include "knowhow/strategy.hpp"

namespace knowhow {

// Result of the least-fixpoint computation for a Kh goal.
//
// Classes inside the goal enter at stage 0 and are left out of the witness.
// A class entering at stage k+1 is assigned the least action all of whose
// class successors entered at stage k or earlier, so witness edges strictly
// decrease the stage.
struct ForcingResult {
  std::set<ClassId> winning;
  Strategy witness;
  std::map<ClassId, std::size_t> stage;
};

StateSet extension(const Frame& frame, const Formula& f);
StateSet extension(const Model& m, const Formula& f);

bool eval(const Frame& frame, std::size_t state, const Formula& f);
// Throws UnknownState.
bool eval(const Model& m, std::string_view state, const Formula& f);

ForcingResult kh_forcing(const Model& m, const StateSet& goal);

// Witness strategy for Kh f at `state`, restricted to the classes reachable
// from [state] along witness edges; nullopt when Kh f is false there.
std::optional<Strategy> synthesize(const Model& m, std::string_view state,
                                   const Formula& f);

struct BruteForceResult {
  bool holds = false;
  std::uint64_t space = 0;  // product over classes of 1 + |uniform actions|
  std::uint64_t tried = 0;
  std::optional<Strategy> witness;
};

inline constexpr std::uint64_t kDefaultStrategyCap = 1'000'000;

// Decides Kh by enumerating every strategy and verifying it directly.
// Throws SpaceTooLarge when the strategy space exceeds `cap`.
BruteForceResult brute_force_kh(const Model& m, std::string_view state,
                                const StateSet& goal,
                                std::uint64_t cap = kDefaultStrategyCap);

namespace detail {

inline constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

struct IndexedForcing {
  std::vector<bool> winning;
  IndexedStrategy witness;
  std::vector<std::size_t> stage;  // kNever outside the winning region
};

IndexedForcing force(const QuotientGraph& q, const StateSet& goal);
StateSet states_of(const QuotientGraph& q, const std::vector<bool>& classes);

BruteForceResult brute_force(const QuotientGraph& q, std::size_t root,
                             const StateSet& goal, std::uint64_t cap);

}  // namespace detail
}  // namespace knowhow

#endif  // KNOWHOW_CHECKER_HPP_
