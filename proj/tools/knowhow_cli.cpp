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

// Command-line front end over the knowhow C API.
//
// Exit codes: 0 true/valid/sat/proof-ok, 1 false/invalid/unsat/none/
// proof-rejected, 2 usage, 3 input validation, 4 internal error.

#include <cstdint>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "knowhow/knowhow.h"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInternal = 4;

struct FormulaDeleter {
  void operator()(kh_formula* f) const { kh_formula_free(f); }
};
struct ModelDeleter {
  void operator()(kh_model* m) const { kh_model_free(m); }
};
struct ProofDeleter {
  void operator()(kh_proof* p) const { kh_proof_free(p); }
};
using FormulaPtr = std::unique_ptr<kh_formula, FormulaDeleter>;
using ModelPtr = std::unique_ptr<kh_model, ModelDeleter>;
using ProofPtr = std::unique_ptr<kh_proof, ProofDeleter>;

// Raised for any failing C API call; carries the exit code to use.
struct Failure {
  int code;
};

void require(kh_status status) {
  if (status == KH_OK) return;
  std::cerr << "error (" << kh_status_name(status)
            << "): " << kh_last_error_message() << "\n";
  bool internal = status == KH_ERR_INCONSISTENT || status == KH_ERR_INTERNAL;
  throw Failure{internal ? kExitInternal : kExitValidation};
}

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  if (!s) return {};
  std::string out(s);
  kh_string_free(s);
  return out;
}

FormulaPtr parse_formula(const std::string& text) {
  kh_formula* f = nullptr;
  require(kh_formula_parse(text.c_str(), &f));
  return FormulaPtr(f);
}

ModelPtr load_model(const std::string& path) {
  kh_model* m = nullptr;
  require(kh_model_from_file(path.c_str(), &m));
  return ModelPtr(m);
}

std::string to_string(const kh_formula* f, bool abbreviated) {
  char* s = nullptr;
  require(kh_formula_to_string(f, abbreviated ? 1 : 0, &s));
  return take(s);
}

struct Globals {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t cap = 0;  // 0 keeps the library default

  bool json() const { return format == "json"; }
};

int run_parse(const Globals& g, const std::string& text) {
  FormulaPtr f = parse_formula(text);
  if (!g.json()) {
    std::cout << to_string(f.get(), false) << "\n";
    return kExitTrue;
  }
  char* ast = nullptr;
  require(kh_formula_to_json(f.get(), &ast));
  std::size_t size = 0;
  require(kh_formula_size(f.get(), &size));
  nlohmann::ordered_json doc;
  doc["canonical"] = to_string(f.get(), false);
  doc["abbreviated"] = to_string(f.get(), true);
  doc["size"] = size;
  doc["ast"] = nlohmann::ordered_json::parse(take(ast));
  std::cout << doc.dump() << "\n";
  return kExitTrue;
}

// Witness strategy for a Kh-headed formula as a JSON string; empty if none.
std::string witness_for(const kh_model* m, const std::string& state,
                        const kh_formula* f) {
  const char* head = nullptr;
  require(kh_formula_head(f, &head));
  if (std::string(head) != "Kh") return {};
  kh_formula* raw = nullptr;
  require(kh_formula_operand(f, &raw));
  FormulaPtr goal(raw);
  int found = 0;
  char* sigma = nullptr;
  require(kh_model_synthesize(m, state.c_str(), goal.get(), &found, &sigma));
  return found ? take(sigma) : std::string();
}

int run_check(const Globals& g, const std::string& path,
              const std::string& state, const std::string& text,
              bool witness) {
  ModelPtr m = load_model(path);
  FormulaPtr f = parse_formula(text);
  int holds = 0;
  require(kh_model_check(m.get(), state.c_str(), f.get(), &holds));
  std::string sigma;
  if (witness && holds) sigma = witness_for(m.get(), state, f.get());
  if (g.json()) {
    nlohmann::ordered_json doc;
    doc["state"] = state;
    doc["formula"] = to_string(f.get(), true);
    doc["holds"] = holds != 0;
    if (witness)
      doc["witness"] = sigma.empty() ? nlohmann::ordered_json(nullptr)
                                     : nlohmann::ordered_json::parse(sigma);
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << (holds ? "true" : "false") << "\n";
    if (witness && holds) std::cout << (sigma.empty() ? "none" : sigma) << "\n";
  }
  return holds ? kExitTrue : kExitFalse;
}

int run_synth(const Globals& g, const std::string& path,
              const std::string& state, const std::string& text) {
  ModelPtr m = load_model(path);
  FormulaPtr f = parse_formula(text);
  int found = 0;
  char* sigma = nullptr;
  require(kh_model_synthesize(m.get(), state.c_str(), f.get(), &found, &sigma));
  std::string out = take(sigma);
  if (!found) {
    std::cout << (g.json() ? "null" : "none") << "\n";
    return kExitFalse;
  }
  if (g.json()) {
    std::cout << out << "\n";
  } else {
    const auto doc = nlohmann::ordered_json::parse(out);
    for (const auto& [cls, action] : doc.items())
      std::cout << "[" << cls << "] -> " << action.get<std::string>() << "\n";
  }
  return kExitTrue;
}

int run_classes(const Globals& g, const std::string& path) {
  ModelPtr m = load_model(path);
  char* s = nullptr;
  require(kh_model_classes_json(m.get(), &s));
  std::string out = take(s);
  if (g.json()) {
    std::cout << out << "\n";
    return kExitTrue;
  }
  auto doc = nlohmann::ordered_json::parse(out);
  auto join = [](const nlohmann::ordered_json& items, const char* open,
                 const char* close) {
    std::string r;
    for (const auto& x : items) {
      if (!r.empty()) r += ", ";
      r += open + x.get<std::string>() + close;
    }
    return r;
  };
  for (const auto& c : doc["classes"]) {
    std::cout << "[" << c["id"].get<std::string>() << "] = {"
              << join(c["members"], "", "") << "}\n";
    std::cout << "  uniform: "
              << (c["uniform_actions"].empty() ? "-" : join(c["uniform_actions"], "", ""))
              << "\n";
    for (const auto& [action, targets] : c["successors"].items())
      std::cout << "  " << action << " -> " << join(targets, "[", "]") << "\n";
  }
  return kExitTrue;
}

kh_decision_options decision_options(const Globals& g) {
  kh_decision_options o;
  kh_decision_options_default(&o);
  if (g.cap) o.max_free_members = g.cap;
  return o;
}

int run_sat(const Globals& g, const std::string& text, bool validity) {
  FormulaPtr f = parse_formula(text);
  kh_decision_options o = decision_options(g);
  int verdict = 0;
  char* report = nullptr;
  require(validity ? kh_valid(f.get(), &o, &verdict, &report)
                   : kh_satisfiable(f.get(), &o, &verdict, &report));
  std::string out = take(report);
  if (g.json()) {
    std::cout << out << "\n";
  } else {
    auto doc = nlohmann::ordered_json::parse(out);
    if (validity) {
      std::cout << (verdict ? "valid" : "invalid") << "\n";
      if (!verdict)
        std::cout << "countermodel state: "
                  << doc["countermodel"]["state"].get<std::string>() << "\n"
                  << "countermodel: " << doc["countermodel"]["model"].dump()
                  << "\n";
    } else {
      std::cout << (verdict ? "sat" : "unsat") << "\n";
      if (verdict)
        std::cout << "witness state: " << doc["state"].get<std::string>()
                  << "\n"
                  << "witness model: " << doc["model"].dump() << "\n";
    }
  }
  return verdict ? kExitTrue : kExitFalse;
}

int run_prove(const Globals& g, const std::string& path) {
  kh_proof* raw = nullptr;
  require(kh_proof_from_file(path.c_str(), &raw));
  ProofPtr p(raw);
  int ok = 0;
  char* report = nullptr;
  require(kh_proof_check(p.get(), &ok, &report));
  std::string out = take(report);
  if (g.json()) {
    std::cout << out << "\n";
  } else {
    auto doc = nlohmann::ordered_json::parse(out);
    if (ok) {
      std::cout << "ok: " << doc["steps"].get<std::size_t>() << " steps";
      if (doc["conclusion"].is_string())
        std::cout << ", concludes " << doc["conclusion"].get<std::string>();
      std::cout << "\n";
    } else {
      std::cout << "rejected at step " << doc["step"].get<std::size_t>()
                << ": " << doc["reason"].get<std::string>() << " ("
                << doc["detail"].get<std::string>() << ")\n";
    }
  }
  return ok ? kExitTrue : kExitFalse;
}

int run_fuzz(const Globals& g, const std::string& text, std::uint64_t trials) {
  FormulaPtr f = parse_formula(text);
  kh_gen_params gp;
  kh_gen_params_default(&gp);
  gp.seed = g.seed;
  int found = 0;
  char* report = nullptr;
  require(kh_fuzz_validity(f.get(), trials, &gp, &found, &report));
  std::string out = take(report);
  if (g.json()) {
    std::cout << out << "\n";
  } else {
    auto doc = nlohmann::ordered_json::parse(out);
    if (found) {
      const auto& ce = doc["counterexample"];
      std::cout << "counterexample at trial " << ce["trial"].get<std::uint64_t>()
                << ", state " << ce["state"].get<std::string>() << "\n"
                << "model: " << ce["model"].dump() << "\n";
    } else {
      std::cout << "no counterexample in " << doc["trials"].get<std::uint64_t>()
                << " trials (seed " << g.seed << ")\n";
    }
  }
  return found ? kExitFalse : kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker, decision procedure and proof checker for the "
               "logic of knowing how"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", g.seed, "Seed for randomized commands");
  app.add_option("--cap", g.cap,
                 "Cap on freely enumerated closure members (sat, valid)");

  std::string formula, model, state, proof;
  bool witness = false;
  std::uint64_t trials = 10000;
  int code = kExitUsage;

  auto* parse = app.add_subcommand("parse", "Parse and print a formula");
  parse->add_option("formula", formula)->required();

  auto* check = app.add_subcommand("check", "Evaluate a formula at a state");
  check->add_option("model", model)->required();
  check->add_option("state", state)->required();
  check->add_option("formula", formula)->required();
  check->add_flag("--witness", witness,
                  "Print the strategy for a true Kh formula");

  auto* synth = app.add_subcommand("synth", "Synthesize a strategy for Kh goal");
  synth->add_option("model", model)->required();
  synth->add_option("state", state)->required();
  synth->add_option("goal", formula)->required();

  auto* classes = app.add_subcommand("classes", "Print the quotient graph");
  classes->add_option("model", model)->required();

  auto* sat = app.add_subcommand("sat", "Decide satisfiability");
  sat->add_option("formula", formula)->required();

  auto* valid = app.add_subcommand("valid", "Decide validity");
  valid->add_option("formula", formula)->required();

  auto* prove = app.add_subcommand("prove", "Check a proof script");
  prove->add_option("proof", proof)->required();

  auto* fuzz = app.add_subcommand("fuzz", "Search random models for a countermodel");
  fuzz->add_option("formula", formula)->required();
  fuzz->add_option("--trials", trials, "Number of random models");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : kExitUsage;
  }

  try {
    if (*parse) code = run_parse(g, formula);
    else if (*check) code = run_check(g, model, state, formula, witness);
    else if (*synth) code = run_synth(g, model, state, formula);
    else if (*classes) code = run_classes(g, model);
    else if (*sat) code = run_sat(g, formula, false);
    else if (*valid) code = run_sat(g, formula, true);
    else if (*prove) code = run_prove(g, proof);
    else if (*fuzz) code = run_fuzz(g, formula, trials);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return code;
}
