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

#include "knowhow/knowhow.h"

#include <string>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

using nlohmann::json;

const std::string kCure = std::string(KNOWHOW_FIXTURE_DIR) + "/cure.model";
const std::string kProof =
    std::string(KNOWHOW_FIXTURE_DIR) + "/neg_introspection.proof";

// Owns a C string handed out by the library.
json take_json(char* s) {
  json doc = json::parse(s);
  kh_string_free(s);
  return doc;
}

kh_formula* formula(const char* text) {
  kh_formula* f = nullptr;
  EXPECT_EQ(kh_formula_parse(text, &f), KH_OK) << text;
  return f;
}

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STREQ(kh_version(), "0.1.0");
  EXPECT_STREQ(kh_status_name(KH_OK), "ok");
  EXPECT_STREQ(kh_status_name(KH_ERR_TOO_LARGE), "too-large");
}

TEST(CApiTest, FormulaRoundTrip) {
  kh_formula* f = formula("Kh p -> K q");
  char* s = nullptr;
  ASSERT_EQ(kh_formula_to_string(f, 1, &s), KH_OK);
  EXPECT_STREQ(s, "(Kh p -> K q)");
  kh_string_free(s);
  ASSERT_EQ(kh_formula_to_string(f, 0, &s), KH_OK);
  EXPECT_STREQ(s, "(~(Kh p & (~K q)))");
  kh_string_free(s);
  size_t size = 0;
  ASSERT_EQ(kh_formula_size(f, &size), KH_OK);
  EXPECT_EQ(size, 7u);
  const char* head = nullptr;
  ASSERT_EQ(kh_formula_head(f, &head), KH_OK);
  EXPECT_STREQ(head, "not");
  kh_formula* inner = nullptr;
  ASSERT_EQ(kh_formula_operand(f, &inner), KH_OK);
  ASSERT_EQ(kh_formula_head(inner, &head), KH_OK);
  EXPECT_STREQ(head, "and");
  kh_formula* none = nullptr;
  EXPECT_EQ(kh_formula_operand(inner, &none), KH_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(none, nullptr);
  ASSERT_EQ(kh_formula_to_json(f, &s), KH_OK);
  EXPECT_TRUE(take_json(s).is_object());
  kh_formula_free(inner);
  kh_formula_free(f);
}

TEST(CApiTest, ParseErrors) {
  kh_formula* f = reinterpret_cast<kh_formula*>(1);
  EXPECT_EQ(kh_formula_parse("p &", &f), KH_ERR_SYNTAX);
  EXPECT_EQ(f, nullptr);
  EXPECT_NE(std::string(kh_last_error_message()).find("position"),
            std::string::npos);
  EXPECT_EQ(kh_formula_parse("K & p", &f), KH_ERR_RESERVED_WORD);
  EXPECT_EQ(kh_formula_parse("true & Kh", &f), KH_ERR_RESERVED_WORD);
  EXPECT_EQ(kh_formula_parse("(p", &f), KH_ERR_SYNTAX);
  EXPECT_EQ(kh_formula_parse("p & K true", &f), KH_OK);
  kh_formula_free(f);
}

TEST(CApiTest, NullArguments) {
  kh_formula* f = nullptr;
  EXPECT_EQ(kh_formula_parse(nullptr, &f), KH_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(kh_formula_parse("p", nullptr), KH_ERR_INVALID_ARGUMENT);
  char* s = nullptr;
  EXPECT_EQ(kh_formula_to_string(nullptr, 0, &s), KH_ERR_INVALID_ARGUMENT);
  int holds = 0;
  EXPECT_EQ(kh_model_check(nullptr, "s1", nullptr, &holds),
            KH_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(kh_satisfiable(nullptr, nullptr, &holds, nullptr),
            KH_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(kh_proof_check(nullptr, &holds, nullptr), KH_ERR_INVALID_ARGUMENT);
  kh_formula_free(nullptr);
  kh_model_free(nullptr);
  kh_proof_free(nullptr);
  kh_string_free(nullptr);
}

TEST(CApiTest, ModelCheckAndSynthesis) {
  kh_model* m = nullptr;
  ASSERT_EQ(kh_model_from_file(kCure.c_str(), &m), KH_OK);
  kh_formula* cure = formula("Kh ~p");
  int holds = -1;
  ASSERT_EQ(kh_model_check(m, "s1", cure, &holds), KH_OK);
  EXPECT_EQ(holds, 1);
  kh_formula* q = formula("~q");
  kh_formula* khq = formula("Kh ~q");
  ASSERT_EQ(kh_model_check(m, "s1", khq, &holds), KH_OK);
  EXPECT_EQ(holds, 0);
  EXPECT_EQ(kh_model_check(m, "s9", cure, &holds), KH_ERR_UNKNOWN_STATE);

  kh_formula* not_p = formula("~p");
  int found = 0;
  char* strategy = nullptr;
  ASSERT_EQ(kh_model_synthesize(m, "s1", not_p, &found, &strategy), KH_OK);
  ASSERT_EQ(found, 1);
  std::string strategy_text = strategy;
  EXPECT_EQ(take_json(strategy),
            json::parse(R"({"s1":"test","s3":"pills","s4":"surgery"})"));
  ASSERT_EQ(kh_model_synthesize(m, "s1", q, &found, &strategy), KH_OK);
  EXPECT_EQ(found, 0);
  EXPECT_EQ(strategy, nullptr);

  int ok = 0;
  char* report = nullptr;
  ASSERT_EQ(kh_strategy_verify(m, strategy_text.c_str(), "s1", not_p, &ok,
                               &report),
            KH_OK);
  EXPECT_EQ(ok, 1);
  kh_string_free(report);
  ASSERT_EQ(kh_strategy_verify(m, R"({"s1":"test"})", "s1", not_p, &ok,
                               &report),
            KH_OK);
  EXPECT_EQ(ok, 0);
  kh_string_free(report);

  char* classes = nullptr;
  ASSERT_EQ(kh_model_classes_json(m, &classes), KH_OK);
  json cj = take_json(classes);
  EXPECT_EQ(cj["classes"].size(), 5u);

  kh_formula_free(cure);
  kh_formula_free(q);
  kh_formula_free(khq);
  kh_formula_free(not_p);
  kh_model_free(m);
}

TEST(CApiTest, ModelErrors) {
  kh_model* m = nullptr;
  EXPECT_EQ(kh_model_from_json("{", &m), KH_ERR_PARSE);
  EXPECT_EQ(kh_model_from_json(
                R"({"states":["a"],"actions":[],"transitions":[["a","x","a"]],)"
                R"("equiv":[],"valuation":{}})",
                &m),
            KH_ERR_VALIDATION);
  EXPECT_EQ(m, nullptr);
  EXPECT_EQ(kh_model_from_file("/nonexistent.model", &m), KH_ERR_PARSE);
}

TEST(CApiTest, Decision) {
  kh_formula* f = formula("~(Kh p & Kh q -> Kh (p & q))");
  int sat = 0;
  char* report = nullptr;
  ASSERT_EQ(kh_satisfiable(f, nullptr, &sat, &report), KH_OK);
  EXPECT_EQ(sat, 1);
  json r = take_json(report);
  EXPECT_TRUE(r["satisfiable"].get<bool>());
  ASSERT_TRUE(r["model"].is_object());

  // The reported witness satisfies the formula when loaded back.
  kh_model* m = nullptr;
  ASSERT_EQ(kh_model_from_json(r["model"].dump().c_str(), &m), KH_OK);
  int holds = 0;
  ASSERT_EQ(kh_model_check(m, r["state"].get<std::string>().c_str(), f,
                           &holds),
            KH_OK);
  EXPECT_EQ(holds, 1);
  kh_model_free(m);

  kh_formula* g = formula("Kh p -> K p");
  int valid = 1;
  ASSERT_EQ(kh_valid(g, nullptr, &valid, &report), KH_OK);
  EXPECT_EQ(valid, 0);
  EXPECT_TRUE(take_json(report)["countermodel"].is_object());

  kh_decision_options tight;
  kh_decision_options_default(&tight);
  EXPECT_EQ(tight.max_free_members, 20u);
  tight.max_free_members = 2;
  EXPECT_EQ(kh_valid(g, &tight, &valid, nullptr), KH_ERR_TOO_LARGE);
  kh_formula_free(f);
  kh_formula_free(g);
}

TEST(CApiTest, Proofs) {
  kh_proof* p = nullptr;
  ASSERT_EQ(kh_proof_from_file(kProof.c_str(), &p), KH_OK);
  int ok = 0;
  char* report = nullptr;
  ASSERT_EQ(kh_proof_check(p, &ok, &report), KH_OK);
  EXPECT_EQ(ok, 1);
  EXPECT_EQ(take_json(report)["steps"], 18);
  kh_proof_free(p);

  ASSERT_EQ(kh_proof_parse(R"({"steps":[{"formula":"Kh p -> p","rule":"T"}]})",
                           &p),
            KH_OK);
  ASSERT_EQ(kh_proof_check(p, &ok, &report), KH_OK);
  EXPECT_EQ(ok, 0);
  json r = take_json(report);
  EXPECT_EQ(r["reason"], "not-an-instance");
  EXPECT_EQ(r["step"], 0);
  kh_proof_free(p);
  EXPECT_EQ(kh_proof_parse(R"({"steps":[{"rule":"T"}]})", &p), KH_ERR_PARSE);
}

TEST(CApiTest, Fuzz) {
  kh_formula* f = formula("Kh p -> K p");
  kh_gen_params gp;
  kh_gen_params_default(&gp);
  EXPECT_EQ(gp.max_states, 6u);
  int found = 0;
  char* report = nullptr;
  ASSERT_EQ(kh_fuzz_validity(f, 10000, &gp, &found, &report), KH_OK);
  EXPECT_EQ(found, 1);
  json r = take_json(report);
  EXPECT_TRUE(r["counterexample"].is_object());
  kh_formula_free(f);

  const char* props[] = {"r"};
  gp.props = props;
  gp.num_props = 1;
  kh_formula* g = formula("K r -> r");
  ASSERT_EQ(kh_fuzz_validity(g, 200, &gp, &found, nullptr), KH_OK);
  EXPECT_EQ(found, 0);
  gp.transition_density = 2.0;
  EXPECT_EQ(kh_fuzz_validity(g, 1, &gp, &found, nullptr),
            KH_ERR_INVALID_ARGUMENT);
  kh_formula_free(g);
}

}  // namespace
