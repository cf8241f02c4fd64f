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

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
};

const std::string kFixtures = KNOWHOW_FIXTURE_DIR;

Outcome run(const std::string& args) {
  std::string command = std::string(KNOWHOW_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  Outcome r{-1, {}};
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string cure() { return kFixtures + "/cure.model"; }

TEST(CliTest, Parse) {
  Outcome r = run("parse 'p -> Kh q'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(~(p & (~Kh q)))\n");
  r = run("--format=json parse 'Kh p'");
  EXPECT_EQ(r.code, 0);
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["size"], 2);
  EXPECT_EQ(doc["abbreviated"], "Kh p");
  EXPECT_EQ(run("parse 'p &'").code, 3);
  EXPECT_EQ(run("parse 'Kh & p'").code, 3);
}

TEST(CliTest, Check) {
  Outcome r = run("check " + cure() + " s1 'Kh ~p'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "true\n");
  r = run("check " + cure() + " s1 'Kh ~q'");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "false\n");
  r = run("check --witness " + cure() + " s1 'Kh ~p'");
  EXPECT_EQ(r.out, "true\n{\"s1\":\"test\",\"s3\":\"pills\",\"s4\":\"surgery\"}\n");
  EXPECT_EQ(run("check " + cure() + " s9 p").code, 3);
  EXPECT_EQ(run("check /nonexistent.model s1 p").code, 3);
}

TEST(CliTest, Synth) {
  Outcome r = run("synth " + cure() + " s1 '~p'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[s1] -> test\n[s3] -> pills\n[s4] -> surgery\n");
  r = run("--format=json synth " + cure() + " s1 '~p'");
  EXPECT_EQ(r.out, "{\"s1\":\"test\",\"s3\":\"pills\",\"s4\":\"surgery\"}\n");
  r = run("synth " + cure() + " s1 '~q'");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "none\n");
  r = run("--format=json synth " + cure() + " s1 '~q'");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "null\n");
}

TEST(CliTest, Classes) {
  Outcome r = run("classes " + cure());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "[s1] = {s1, s2}\n"
            "  uniform: test\n"
            "  test -> [s3], [s4]\n"
            "[s3] = {s3}\n"
            "  uniform: pills\n"
            "  pills -> [s5]\n"
            "[s4] = {s4}\n"
            "  uniform: pills, surgery\n"
            "  pills -> [s4], [s6]\n"
            "  surgery -> [s6]\n"
            "[s5] = {s5}\n"
            "  uniform: -\n"
            "[s6] = {s6}\n"
            "  uniform: -\n");
}

TEST(CliTest, Decision) {
  Outcome r = run("sat 'p & ~p'");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "unsat\n");
  r = run("sat 'Kh p & ~K p'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 4), "sat\n");
  r = run("valid 'Kh p -> K Kh p'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "valid\n");
  r = run("--format=json valid 'Kh p -> K p'");
  EXPECT_EQ(r.code, 1);
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_FALSE(doc["valid"].get<bool>());
  EXPECT_TRUE(doc["countermodel"]["model"].is_object());
  EXPECT_EQ(run("--cap 2 valid 'Kh p -> K p'").code, 3);
}

TEST(CliTest, Prove) {
  Outcome r = run("prove " + kFixtures + "/neg_introspection.proof");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok: 18 steps, concludes (Kh p | K (~Kh p))\n");
  EXPECT_EQ(run("prove /nonexistent.proof").code, 3);
}

TEST(CliTest, Fuzz) {
  Outcome r = run("fuzz --trials 100 'K p -> p'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "no counterexample in 100 trials (seed 0)\n");
  r = run("--format=json --seed 5 fuzz --trials 1000 'Kh p -> K p'");
  EXPECT_EQ(r.code, 1);
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["seed"], 5);
  EXPECT_TRUE(doc["counterexample"].is_object());
}

TEST(CliTest, Usage) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("--format=xml parse p").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
