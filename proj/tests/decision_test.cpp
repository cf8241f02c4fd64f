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

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "knowhow/checker.hpp"
#include "knowhow/error.hpp"
#include "knowhow/proofs.hpp"
#include "knowhow/testkit.hpp"
#include "oracle.hpp"

namespace knowhow {
namespace {

TEST(AtomsTest, PropositionAtoms) {
  AtomSet a = atoms(parse("p"));
  Formula p = parse("p"), kp = parse("K p");
  // All four in/out assignments over {p, K p}, minus those violating T.
  std::vector<std::pair<bool, bool>> expected;
  for (bool in_p : {false, true})
    for (bool in_kp : {false, true})
      if (!in_kp || in_p) expected.emplace_back(in_p, in_kp);
  std::vector<std::pair<bool, bool>> got;
  for (std::size_t i = 0; i < a.atoms.size(); ++i)
    got.emplace_back(a.contains(i, p), a.contains(i, kp));
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, expected);
  EXPECT_EQ(got.size(), 3u);
}

TEST(AtomsTest, AxiomFourIsNotLocal) {
  AtomSet a = atoms(parse("K p"));
  bool found = false;
  for (std::size_t i = 0; i < a.atoms.size(); ++i)
    found = found || (a.contains(i, parse("K p")) && !a.contains(i, parse("K K p")));
  EXPECT_TRUE(found);
}

TEST(AtomsTest, ContradictionIsAlwaysOut) {
  Formula f = parse("p & ~p");
  AtomSet a = atoms(f);
  ASSERT_FALSE(a.atoms.empty());
  for (std::size_t i = 0; i < a.atoms.size(); ++i) EXPECT_FALSE(a.contains(i, f));
}

TEST(AtomsTest, LocalCoherence) {
  Formula f = parse("Kh K p -> K q");
  AtomSet a = atoms(f);
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    for (const Formula& g : a.members) {
      bool in = a.contains(i, g);
      if (g.is(Op::kNot)) EXPECT_EQ(in, !a.contains(i, g.operand()));
      if (g.is(Op::kAnd))
        EXPECT_EQ(in, a.contains(i, g.lhs()) && a.contains(i, g.rhs()));
      if (g.is(Op::kK) && in) {
        EXPECT_TRUE(a.contains(i, g.operand()));
        if (a.find(Formula::knows_how(g.operand())))
          EXPECT_TRUE(a.contains(i, Formula::knows_how(g.operand())));
      }
    }
  }
}

TEST(AtomsTest, CapOnFreeMembers) {
  Formula f = parse("K p & Kh q");
  DecisionOptions tight;
  tight.max_free_members = 4;
  EXPECT_THROW(atoms(f, tight), TooLarge);
  EXPECT_NO_THROW(atoms(f));
}

TEST(CanonicalModelTest, KnowHowP) {
  CanonicalModel cm = canonical_model(parse("Kh p"));
  EXPECT_EQ(cm.action_names, std::vector<std::string>{"p"});
  Model m = cm.to_model();
  ASSERT_GT(m.num_transitions(), 0u);
  for (const Transition& t : m.transitions()) {
    std::size_t from = m.state_index(t.from), to = m.state_index(t.to);
    EXPECT_TRUE(cm.contains(from, parse("Kh p")));
    EXPECT_FALSE(cm.contains(from, parse("K p")));
    EXPECT_TRUE(cm.contains(to, parse("K p")));
  }
  EXPECT_LE(cm.num_states(), 16u);
  EXPECT_TRUE(cm.within_bound);
}

TEST(CanonicalModelTest, NoKnowHowMeansNoActions) {
  CanonicalModel cm = canonical_model(parse("p"));
  EXPECT_TRUE(cm.actions.empty());
  EXPECT_EQ(cm.to_model().num_transitions(), 0u);
}

// The truth lemma, checked directly: on the explicit canonical model every
// closure member holds exactly at the states whose atom contains it.
TEST(CanonicalModelTest, TruthLemmaOnRandomFormulas) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Formula f = random_formula(seed, 1 + seed % 4, {"p", "q"});
    CanonicalModel cm;
    try {
      cm = canonical_model(f);
    } catch (const TooLarge&) {
      continue;
    }
    ASSERT_TRUE(cm.kh_uniform) << print(f);
    ASSERT_TRUE(cm.within_bound) << print(f);
    Model m = cm.to_model();
    for (const Formula& g : cm.universe.members) {
      StateSet ext = extension(m, g);
      for (std::size_t s = 0; s < cm.num_states(); ++s)
        ASSERT_EQ(ext.test(s), cm.contains(s, g)) << print(g) << " in " << print(f);
    }
    ++checked;
  }
  EXPECT_GT(checked, 250u);
}

TEST(CanonicalModelTest, CompactRealizationKeepsTruth) {
  Formula f = parse("~(Kh p & Kh q -> Kh (p & q))");
  CanonicalModel cm = canonical_model(f);
  Model full = cm.to_model(TransitionDetail::kFull);
  Model compact = cm.to_model(TransitionDetail::kOnePerClass);
  EXPECT_LE(compact.num_transitions(), full.num_transitions());
  for (const Formula& g : cm.universe.members)
    EXPECT_EQ(extension(full, g), extension(compact, g)) << print(g);
}

TEST(SatisfiableTest, NonNormalityWitness) {
  Formula f = parse("~(Kh p & Kh q -> Kh (p & q))");
  SatResult r = satisfiable(f);
  ASSERT_TRUE(r.satisfiable);
  ASSERT_TRUE(r.model && r.state);
  EXPECT_TRUE(eval(*r.model, *r.state, f));
  EXPECT_TRUE(oracle::naive_eval(oracle::naive(*r.model),
                                 int(r.model->state_index(*r.state)), f));
}

TEST(SatisfiableTest, Contradiction) {
  SatResult r = satisfiable(parse("p & ~p"));
  EXPECT_FALSE(r.satisfiable);
  EXPECT_EQ(r.cross_check, SatResult::CrossCheck::kConfirmed);
}

TEST(SatisfiableTest, KhKhCompositionIsValid) {
  EXPECT_FALSE(satisfiable(parse("~(Kh Kh p -> Kh p)")).satisfiable);
}

TEST(ValidTest, Examples) {
  EXPECT_TRUE(valid(parse("Kh p -> Kh K p")));
  EXPECT_TRUE(valid(parse("~Kh p -> K ~Kh p")));
  EXPECT_FALSE(valid(parse("Kh p -> K p")));
  EXPECT_FALSE(valid(parse("Kh p & Kh q -> Kh (p & q)")));
}

TEST(ValidTest, AxiomSchemas) {
  for (AxiomName a : kAllAxioms)
    EXPECT_TRUE(valid(axiom_schema(a))) << axiom_rule_name(a);
  EXPECT_TRUE(valid(parse("K p -> p | q")));
  EXPECT_FALSE(valid(parse("K p -> K q")));
}

TEST(ValidTest, KhToKConverseHasSmallCountermodel) {
  auto hit = bounded_model_search(parse("~(Kh p -> K p)"));
  ASSERT_TRUE(hit.has_value());
  EXPECT_FALSE(eval(hit->model, hit->state, parse("Kh p -> K p")));
}

TEST(BoundedSearchTest, Examples) {
  auto hit = bounded_model_search(parse("p"));
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->model.num_states(), 1u);
  EXPECT_TRUE(hit->model.holds(hit->model.state_index(hit->state), "p"));

  Formula f = parse("Kh p & ~K p");
  hit = bounded_model_search(f);
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->model.num_states(), 2u);
  EXPECT_EQ(hit->model.num_actions(), 1u);
  EXPECT_TRUE(eval(hit->model, hit->state, f));

  EXPECT_FALSE(bounded_model_search(parse("p & ~p")).has_value());
}

TEST(BoundedSearchTest, Bounds) {
  EXPECT_THROW(bounded_model_search(parse("p & q & r")), TooLarge);
  EXPECT_THROW(bounded_model_search(parse("p"), 5), TooLarge);
  EXPECT_THROW(bounded_model_search(parse("p"), 4, 3), TooLarge);
  EXPECT_TRUE(within_search_bounds(parse("Kh false -> p | q")));
  EXPECT_FALSE(within_search_bounds(parse("p | q | r")));
}

TEST(BoundedSearchTest, HitsMatchNaiveSemantics) {
  for (const Formula& f : oracle::all_formulas({"p", "q"}, 4)) {
    auto hit = bounded_model_search(f, 3);
    if (!hit) continue;
    oracle::NaiveModel n = oracle::naive(hit->model);
    ASSERT_TRUE(oracle::naive_eval(n, int(hit->model.state_index(hit->state)), f))
        << print(f);
  }
}

TEST(AgreementTest, SmallFormulas) {
  DecisionOptions no_cross;
  no_cross.cross_check = false;
  for (const Formula& f : oracle::all_formulas({"p", "q"}, 5)) {
    bool sat = satisfiable(f, no_cross).satisfiable;
    bool found = bounded_model_search(f, 4).has_value();
    ASSERT_EQ(sat, found) << print(f);
  }
}

}  // namespace
}  // namespace knowhow
