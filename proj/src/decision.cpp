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

#include "knowhow/decision.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "knowhow/checker.hpp"

namespace knowhow {

std::optional<std::size_t> AtomSet::find(const Formula& g) const {
  auto it = index.find(g);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

bool AtomSet::contains(std::size_t atom, const Formula& g) const {
  auto i = find(g);
  return i && atoms[atom].test(*i);
}

namespace {

inline constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

// Index layout of a closure, shared by atom enumeration and pruning.
struct Layout {
  std::vector<Formula> members;
  std::unordered_map<Formula, std::size_t> index;
  std::vector<std::size_t> free;       // Prop, K and Kh members
  std::vector<std::size_t> derived;    // Not and And members, by size
  std::vector<std::size_t> lhs, rhs;   // child indices, kAbsent if none

  struct KMember {
    std::size_t self, operand, kh_operand;
  };
  struct KhMember {
    std::size_t self, operand, k_operand, k_self, kh_k_operand;
  };
  std::vector<KMember> ks;
  std::vector<KhMember> khs;
  // Models never label a state with the falsum proposition.
  std::size_t falsum_prop = kAbsent;

  std::size_t at(const Formula& g) const {
    auto it = index.find(g);
    return it == index.end() ? kAbsent : it->second;
  }
};

Layout layout(const Formula& f) {
  Layout l;
  FormulaSet cl = closure(subformulas(f));
  l.members.assign(cl.begin(), cl.end());
  for (std::size_t i = 0; i < l.members.size(); ++i)
    l.index.emplace(l.members[i], i);
  const std::size_t n = l.members.size();
  l.lhs.assign(n, kAbsent);
  l.rhs.assign(n, kAbsent);
  for (std::size_t i = 0; i < n; ++i) {
    const Formula& g = l.members[i];
    switch (g.op()) {
      case Op::kProp:
        l.free.push_back(i);
        if (g.name() == kFalsumProp) l.falsum_prop = i;
        break;
      case Op::kNot:
        l.lhs[i] = l.at(g.operand());
        l.derived.push_back(i);
        break;
      case Op::kAnd:
        l.lhs[i] = l.at(g.lhs());
        l.rhs[i] = l.at(g.rhs());
        l.derived.push_back(i);
        break;
      case Op::kK:
        l.free.push_back(i);
        l.ks.push_back({i, l.at(g.operand()),
                        l.at(Formula::knows_how(g.operand()))});
        break;
      case Op::kKh:
        l.free.push_back(i);
        l.khs.push_back({i, l.at(g.operand()),
                         l.at(Formula::knows(g.operand())),
                         l.at(Formula::knows(g)),
                         l.at(Formula::knows_how(Formula::knows(g.operand())))});
        break;
    }
  }
  std::stable_sort(l.derived.begin(), l.derived.end(),
                   [&](std::size_t a, std::size_t b) {
                     return l.members[a].size() < l.members[b].size();
                   });
  return l;
}

bool locally_coherent(const Layout& l, const std::vector<char>& in) {
  if (l.falsum_prop != kAbsent && in[l.falsum_prop]) return false;
  for (const auto& k : l.ks) {
    if (!in[k.self]) continue;
    if (!in[k.operand]) return false;
    if (k.kh_operand != kAbsent && !in[k.kh_operand]) return false;
  }
  for (const auto& h : l.khs) {
    if (!in[h.self]) continue;
    if (!in[h.k_self]) return false;
    if (h.kh_k_operand != kAbsent && !in[h.kh_k_operand]) return false;
  }
  return true;
}

AtomSet enumerate(const Layout& l, const DecisionOptions& options) {
  AtomSet out;
  out.members = l.members;
  out.index = l.index;
  out.free_members = l.free.size();
  if (l.free.size() > options.max_free_members || l.free.size() >= 63)
    throw TooLarge("closure enumeration", l.free.size(),
                   options.max_free_members);
  out.candidates = std::uint64_t{1} << l.free.size();

  const std::size_t n = l.members.size();
  std::vector<char> in(n, 0);
  for (std::uint64_t mask = 0; mask < out.candidates; ++mask) {
    for (std::size_t j = 0; j < l.free.size(); ++j)
      in[l.free[j]] = (mask >> j) & 1;
    for (std::size_t i : l.derived) {
      if (l.members[i].is(Op::kNot))
        in[i] = !in[l.lhs[i]];
      else
        in[i] = in[l.lhs[i]] && in[l.rhs[i]];
    }
    if (!locally_coherent(l, in)) continue;
    boost::dynamic_bitset<> atom(n);
    for (std::size_t i = 0; i < n; ++i)
      if (in[i]) atom.set(i);
    out.atoms.push_back(std::move(atom));
  }
  return out;
}

boost::dynamic_bitset<> k_part(const Layout& l,
                               const boost::dynamic_bitset<>& atom) {
  boost::dynamic_bitset<> part(l.ks.size());
  for (std::size_t j = 0; j < l.ks.size(); ++j)
    if (atom.test(l.ks[j].self)) part.set(j);
  return part;
}

// Removes atoms whose demands no remaining atom can meet:
//   K g out            -> an atom with the same K-part has g out;
//   Kh g in, K g out   -> some atom has K g in;
//   Kh g out           -> for each action h open at the atom (Kh h in,
//                         K h out), some atom has K h in and Kh g out.
// Returns the number of atoms removed.
std::size_t prune(const Layout& l, const AtomSet& atoms,
                  std::vector<bool>& alive) {
  const std::size_t n = l.members.size();
  std::size_t removed = 0;
  for (bool changed = true; changed;) {
    changed = false;
    auto kill = [&](std::size_t a) {
      if (!alive[a]) return;
      alive[a] = false;
      ++removed;
      changed = true;
    };

    std::map<boost::dynamic_bitset<>, std::vector<std::size_t>> groups;
    for (std::size_t a = 0; a < atoms.atoms.size(); ++a)
      if (alive[a]) groups[k_part(l, atoms.atoms[a])].push_back(a);
    for (const auto& [part, group] : groups) {
      boost::dynamic_bitset<> all(n);
      all.set();
      for (std::size_t a : group) all &= atoms.atoms[a];
      bool unmet = false;
      for (std::size_t j = 0; j < l.ks.size() && !unmet; ++j)
        unmet = !part.test(j) && all.test(l.ks[j].operand);
      if (unmet)
        for (std::size_t a : group) kill(a);
    }
    if (changed) continue;

    // For each Kh member: the meet of all live atoms with K operand in.
    std::vector<bool> reachable(l.khs.size(), false);
    std::vector<boost::dynamic_bitset<>> meet(l.khs.size(),
                                              boost::dynamic_bitset<>(n));
    for (auto& m : meet) m.set();
    for (std::size_t a = 0; a < atoms.atoms.size(); ++a) {
      if (!alive[a]) continue;
      for (std::size_t j = 0; j < l.khs.size(); ++j) {
        if (!atoms.atoms[a].test(l.khs[j].k_operand)) continue;
        reachable[j] = true;
        meet[j] &= atoms.atoms[a];
      }
    }
    for (std::size_t a = 0; a < atoms.atoms.size(); ++a) {
      if (!alive[a]) continue;
      const auto& atom = atoms.atoms[a];
      bool unmet = false;
      for (std::size_t j = 0; j < l.khs.size() && !unmet; ++j) {
        bool open = atom.test(l.khs[j].self) && !atom.test(l.khs[j].k_operand);
        if (!open) continue;
        if (!reachable[j]) {
          unmet = true;
          break;
        }
        for (const auto& goal : l.khs)
          if (!atom.test(goal.self) && meet[j].test(goal.self)) {
            unmet = true;
            break;
          }
      }
      if (unmet) kill(a);
    }
  }
  return removed;
}

std::string padded(std::size_t i, std::size_t width) {
  std::string digits = std::to_string(i);
  return "atom" + std::string(width - std::min(width, digits.size()), '0') +
         digits;
}

}  // namespace

AtomSet atoms(const Formula& f, const DecisionOptions& options) {
  return enumerate(layout(f), options);
}

CanonicalModel canonical_model(const Formula& f,
                               const DecisionOptions& options) {
  const Layout l = layout(f);
  CanonicalModel cm;
  cm.universe = enumerate(l, options);
  cm.formula_size = f.size();

  std::vector<bool> alive(cm.universe.atoms.size(), true);
  cm.pruned = prune(l, cm.universe, alive);
  for (std::size_t a = 0; a < alive.size(); ++a)
    if (alive[a]) cm.states.push_back(a);
  const std::size_t ns = cm.states.size();
  const std::size_t exponent = 2 * cm.formula_size;
  cm.within_bound = exponent >= 64 || ns <= (std::uint64_t{1} << exponent);

  auto atom = [&](std::size_t s) -> const boost::dynamic_bitset<>& {
    return cm.universe.atoms[cm.states[s]];
  };

  QuotientGraph& q = cm.frame.quotient;
  const std::size_t width = std::to_string(ns == 0 ? 0 : ns - 1).size();
  for (std::size_t s = 0; s < ns; ++s)
    q.state_names.push_back(padded(s, std::max<std::size_t>(width, 4)));

  // Actions: operands of the Kh members, ordered by printed name.
  std::vector<std::pair<std::string, std::size_t>> acts;
  for (std::size_t j = 0; j < l.khs.size(); ++j)
    acts.emplace_back(print(l.members[l.khs[j].operand]), j);
  std::sort(acts.begin(), acts.end());
  for (const auto& [name, j] : acts) {
    cm.actions.push_back(l.members[l.khs[j].operand]);
    cm.action_names.push_back(name);
    q.actions.push_back(name);
  }

  // Classes: states with equal K-parts, in order of their least member.
  std::map<boost::dynamic_bitset<>, std::size_t> class_index;
  q.class_of.assign(ns, 0);
  for (std::size_t s = 0; s < ns; ++s) {
    auto part = k_part(l, atom(s));
    auto [it, fresh] = class_index.emplace(part, q.classes.size());
    if (fresh) {
      QuotientGraph::Class c;
      c.id = ClassId{q.state_names[s]};
      q.classes.push_back(std::move(c));
    }
    q.classes[it->second].members.push_back(s);
    q.class_of[s] = it->second;
  }

  const std::size_t na = acts.size();
  for (auto& c : q.classes) {
    c.successors.assign(na, {});
    const auto& rep = atom(c.members.front());
    for (std::size_t m : c.members)
      for (const auto& h : l.khs)
        if (atom(m).test(h.self) != rep.test(h.self)) cm.kh_uniform = false;
  }
  for (std::size_t a = 0; a < na; ++a) {
    const auto& h = l.khs[acts[a].second];
    std::vector<std::size_t> targets;
    for (std::size_t d = 0; d < q.classes.size(); ++d)
      if (atom(q.classes[d].members.front()).test(h.k_operand))
        targets.push_back(d);
    if (targets.empty()) continue;
    for (std::size_t c = 0; c < q.classes.size(); ++c) {
      auto& cls = q.classes[c];
      std::size_t open = 0;
      for (std::size_t m : cls.members)
        if (atom(m).test(h.self) && !atom(m).test(h.k_operand)) ++open;
      if (open == 0) continue;
      cls.successors[a] = targets;
      if (open == cls.members.size()) cls.uniform_actions.push_back(a);
    }
  }

  for (const auto& k : l.members) {
    if (!k.is(Op::kProp)) continue;
    std::size_t i = l.at(k);
    StateSet ext(ns);
    for (std::size_t s = 0; s < ns; ++s)
      if (atom(s).test(i)) ext.set(s);
    cm.frame.valuation.emplace(k.name(), std::move(ext));
  }
  return cm;
}

Model CanonicalModel::to_model(TransitionDetail detail) const {
  const QuotientGraph& q = frame.quotient;
  std::vector<Transition> ts;
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    const auto& cls = q.classes[c];
    for (std::size_t a = 0; a < q.actions.size(); ++a) {
      if (cls.successors[a].empty()) continue;
      const Formula kh = Formula::knows_how(actions[a]);
      const Formula k = Formula::knows(actions[a]);
      for (std::size_t m : cls.members) {
        if (!contains(m, kh) || contains(m, k)) continue;
        for (std::size_t d : cls.successors[a]) {
          const auto& members = q.classes[d].members;
          if (detail == TransitionDetail::kOnePerClass) {
            ts.push_back({q.state_names[m], q.actions[a],
                          q.state_names[members.front()]});
            continue;
          }
          for (std::size_t t : members)
            ts.push_back({q.state_names[m], q.actions[a], q.state_names[t]});
        }
      }
    }
  }
  std::vector<std::vector<StateId>> equiv;
  for (const auto& cls : q.classes) {
    std::vector<StateId> block;
    for (std::size_t m : cls.members) block.push_back(q.state_names[m]);
    equiv.push_back(std::move(block));
  }
  std::map<StateId, std::vector<std::string>> valuation;
  for (const auto& [prop, ext] : frame.valuation)
    for (std::size_t s = 0; s < ext.size(); ++s)
      if (ext.test(s)) valuation[q.state_names[s]].push_back(prop);
  return Model(q.state_names, q.actions, ts, equiv, valuation);
}

namespace {

inline constexpr std::size_t kFullModelTransitionCap = 200'000;

std::size_t count_full_transitions(const CanonicalModel& cm) {
  const QuotientGraph& q = cm.frame.quotient;
  std::size_t total = 0;
  for (const auto& cls : q.classes)
    for (std::size_t a = 0; a < q.actions.size(); ++a) {
      std::size_t width = 0;
      for (std::size_t d : cls.successors[a])
        width += q.classes[d].members.size();
      total += width * cls.members.size();
    }
  return total;
}

}  // namespace

SatResult satisfiable(const Formula& f, const DecisionOptions& options) {
  CanonicalModel cm = canonical_model(f, options);
  SatResult r;
  r.canonical_states = cm.num_states();
  StateSet ext = extension(cm.frame, f);
  if (ext.any()) {
    r.satisfiable = true;
    std::size_t s = ext.find_first();
    TransitionDetail detail =
        count_full_transitions(cm) <= kFullModelTransitionCap
            ? TransitionDetail::kFull
            : TransitionDetail::kOnePerClass;
    r.model = cm.to_model(detail);
    r.state = cm.state_name(s);
    if (!eval(*r.model, *r.state, f))
      throw InconsistentVerdict("canonical witness does not satisfy " +
                                print(f, PrintStyle::kAbbreviated));
    return r;
  }
  if (options.cross_check && within_search_bounds(f)) {
    auto hit = bounded_model_search(f, options.search_states);
    if (hit)
      throw InconsistentVerdict("bounded search satisfies " +
                                print(f, PrintStyle::kAbbreviated) +
                                " at " + hit->state);
    r.cross_check = SatResult::CrossCheck::kConfirmed;
  }
  return r;
}

bool valid(const Formula& f, const DecisionOptions& options) {
  return !satisfiable(Formula::negation(f), options).satisfiable;
}

}  // namespace knowhow
