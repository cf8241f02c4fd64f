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

#include <chrono>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "knowhow/checker.hpp"
#include "knowhow/decision.hpp"
#include "knowhow/error.hpp"
#include "knowhow/formula.hpp"
#include "knowhow/model.hpp"
#include "knowhow/proofs.hpp"
#include "knowhow/strategy.hpp"
#include "knowhow/testkit.hpp"

struct kh_formula {
  knowhow::Formula formula;
};

struct kh_model {
  knowhow::Model model;
};

struct kh_proof {
  knowhow::ProofScript script;
};

namespace {

using nlohmann::ordered_json;

thread_local std::string last_error;

kh_status fail(kh_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
kh_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return KH_OK;
  } catch (const knowhow::SyntaxError& e) {
    return fail(KH_ERR_SYNTAX, e.what());
  } catch (const knowhow::ReservedWordError& e) {
    return fail(KH_ERR_RESERVED_WORD, e.what());
  } catch (const knowhow::ParseError& e) {
    return fail(KH_ERR_PARSE, e.what());
  } catch (const knowhow::ValidationError& e) {
    return fail(KH_ERR_VALIDATION, e.what());
  } catch (const knowhow::UnknownState& e) {
    return fail(KH_ERR_UNKNOWN_STATE, e.what());
  } catch (const knowhow::TooLarge& e) {
    return fail(KH_ERR_TOO_LARGE, e.what());
  } catch (const knowhow::InconsistentVerdict& e) {
    return fail(KH_ERR_INCONSISTENT, e.what());
  } catch (const knowhow::NotSubformulaClosed& e) {
    return fail(KH_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(KH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KH_ERR_INTERNAL, e.what());
  }
}

kh_status null_argument(const char* name) {
  return fail(KH_ERR_INVALID_ARGUMENT,
              std::string("argument '") + name + "' must not be null");
}

char* duplicate(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ordered_json formula_tree(const knowhow::Formula& f) {
  using knowhow::Op;
  ordered_json j;
  switch (f.op()) {
    case Op::kProp:
      j["op"] = "prop";
      j["name"] = f.name();
      break;
    case Op::kNot:
      j["op"] = "not";
      j["operand"] = formula_tree(f.operand());
      break;
    case Op::kAnd:
      j["op"] = "and";
      j["lhs"] = formula_tree(f.lhs());
      j["rhs"] = formula_tree(f.rhs());
      break;
    case Op::kK:
      j["op"] = "K";
      j["operand"] = formula_tree(f.operand());
      break;
    case Op::kKh:
      j["op"] = "Kh";
      j["operand"] = formula_tree(f.operand());
      break;
  }
  return j;
}

ordered_json model_json(const knowhow::Model& m) {
  return ordered_json::parse(knowhow::model_to_json(m));
}

std::string abbreviated(const knowhow::Formula& f) {
  return knowhow::print(f, knowhow::PrintStyle::kAbbreviated);
}

knowhow::DecisionOptions decision_options(const kh_decision_options* o) {
  knowhow::DecisionOptions out;
  if (o) {
    out.max_free_members = o->max_free_members;
    out.cross_check = o->cross_check != 0;
  }
  return out;
}

const char* cross_check_name(knowhow::SatResult::CrossCheck c) {
  return c == knowhow::SatResult::CrossCheck::kConfirmed ? "confirmed"
                                                         : "not-run";
}

}  // namespace

extern "C" {

const char* kh_version(void) { return "0.1.0"; }

const char* kh_status_name(kh_status status) {
  switch (status) {
    case KH_OK: return "ok";
    case KH_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case KH_ERR_SYNTAX: return "syntax-error";
    case KH_ERR_RESERVED_WORD: return "reserved-word";
    case KH_ERR_PARSE: return "parse-error";
    case KH_ERR_VALIDATION: return "validation-error";
    case KH_ERR_UNKNOWN_STATE: return "unknown-state";
    case KH_ERR_TOO_LARGE: return "too-large";
    case KH_ERR_INCONSISTENT: return "inconsistent";
    case KH_ERR_INTERNAL: return "internal-error";
  }
  return "unknown-status";
}

const char* kh_last_error_message(void) { return last_error.c_str(); }

void kh_string_free(char* s) { delete[] s; }

kh_status kh_formula_parse(const char* text, kh_formula** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new kh_formula{knowhow::parse(text)}; });
}

void kh_formula_free(kh_formula* f) { delete f; }

kh_status kh_formula_to_string(const kh_formula* f, int abbreviate,
                               char** out) {
  if (!f) return null_argument("f");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = duplicate(knowhow::print(f->formula,
                                    abbreviate
                                        ? knowhow::PrintStyle::kAbbreviated
                                        : knowhow::PrintStyle::kCanonical));
  });
}

kh_status kh_formula_to_json(const kh_formula* f, char** out) {
  if (!f) return null_argument("f");
  if (!out) return null_argument("out");
  return guarded([&] { *out = duplicate(formula_tree(f->formula).dump()); });
}

kh_status kh_formula_size(const kh_formula* f, size_t* out) {
  if (!f) return null_argument("f");
  if (!out) return null_argument("out");
  *out = f->formula.size();
  return KH_OK;
}

kh_status kh_formula_head(const kh_formula* f, const char** out) {
  if (!f) return null_argument("f");
  if (!out) return null_argument("out");
  static const char* const kHeads[] = {"prop", "not", "and", "K", "Kh"};
  *out = kHeads[static_cast<int>(f->formula.op())];
  return KH_OK;
}

kh_status kh_formula_operand(const kh_formula* f, kh_formula** out) {
  if (!f) return null_argument("f");
  if (!out) return null_argument("out");
  *out = nullptr;
  using knowhow::Op;
  if (f->formula.is(Op::kProp) || f->formula.is(Op::kAnd))
    return fail(KH_ERR_INVALID_ARGUMENT, "formula has no single operand");
  return guarded([&] { *out = new kh_formula{f->formula.operand()}; });
}

kh_status kh_model_from_json(const char* text, kh_model** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new kh_model{knowhow::load_model(text)}; });
}

kh_status kh_model_from_file(const char* path, kh_model** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new kh_model{knowhow::load_model_file(path)}; });
}

void kh_model_free(kh_model* m) { delete m; }

kh_status kh_model_to_json(const kh_model* m, char** out) {
  if (!m) return null_argument("m");
  if (!out) return null_argument("out");
  return guarded([&] { *out = duplicate(knowhow::model_to_json(m->model)); });
}

kh_status kh_model_classes_json(const kh_model* m, char** out) {
  if (!m) return null_argument("m");
  if (!out) return null_argument("out");
  return guarded([&] {
    const knowhow::QuotientGraph q = knowhow::quotient(m->model);
    ordered_json doc;
    doc["actions"] = q.actions;
    ordered_json classes = ordered_json::array();
    for (const auto& c : q.classes) {
      ordered_json jc;
      jc["id"] = c.id.representative;
      ordered_json members = ordered_json::array();
      for (std::size_t s : c.members) members.push_back(q.state_names[s]);
      jc["members"] = std::move(members);
      ordered_json uniform = ordered_json::array();
      for (std::size_t a : c.uniform_actions) uniform.push_back(q.actions[a]);
      jc["uniform_actions"] = std::move(uniform);
      ordered_json succ = ordered_json::object();
      for (std::size_t a = 0; a < q.actions.size(); ++a) {
        if (c.successors[a].empty()) continue;
        ordered_json targets = ordered_json::array();
        for (std::size_t d : c.successors[a])
          targets.push_back(q.classes[d].id.representative);
        succ[q.actions[a]] = std::move(targets);
      }
      jc["successors"] = std::move(succ);
      classes.push_back(std::move(jc));
    }
    doc["classes"] = std::move(classes);
    *out = duplicate(doc.dump());
  });
}

kh_status kh_model_check(const kh_model* m, const char* state,
                         const kh_formula* f, int* holds) {
  if (!m) return null_argument("m");
  if (!state) return null_argument("state");
  if (!f) return null_argument("f");
  if (!holds) return null_argument("holds");
  return guarded(
      [&] { *holds = knowhow::eval(m->model, state, f->formula) ? 1 : 0; });
}

kh_status kh_model_synthesize(const kh_model* m, const char* state,
                              const kh_formula* f, int* found,
                              char** strategy_json) {
  if (!m) return null_argument("m");
  if (!state) return null_argument("state");
  if (!f) return null_argument("f");
  if (!found) return null_argument("found");
  if (!strategy_json) return null_argument("strategy_json");
  *strategy_json = nullptr;
  return guarded([&] {
    auto sigma = knowhow::synthesize(m->model, state, f->formula);
    *found = sigma ? 1 : 0;
    if (sigma) *strategy_json = duplicate(knowhow::strategy_to_json(*sigma));
  });
}

kh_status kh_strategy_verify(const kh_model* m, const char* strategy_json,
                             const char* state, const kh_formula* goal,
                             int* ok, char** report_json) {
  if (!m) return null_argument("m");
  if (!strategy_json) return null_argument("strategy_json");
  if (!state) return null_argument("state");
  if (!goal) return null_argument("goal");
  if (!ok) return null_argument("ok");
  return guarded([&] {
    knowhow::Strategy sigma = knowhow::parse_strategy(m->model, strategy_json);
    knowhow::StateSet ext = knowhow::extension(m->model, goal->formula);
    knowhow::Verdict v = knowhow::verify_strategy(m->model, sigma, state, ext);
    *ok = v.ok() ? 1 : 0;
    if (!report_json) return;
    ordered_json doc;
    doc["ok"] = v.ok();
    doc["reason"] = v.reason();
    if (!v.cycle.empty()) {
      ordered_json cycle = ordered_json::array();
      for (const auto& c : v.cycle) cycle.push_back(c.representative);
      doc["cycle"] = std::move(cycle);
    }
    if (v.leaf) doc["leaf"] = v.leaf->representative;
    if (v.offending_state) doc["offending_state"] = *v.offending_state;
    *report_json = duplicate(doc.dump());
  });
}

void kh_decision_options_default(kh_decision_options* options) {
  if (!options) return;
  knowhow::DecisionOptions d;
  options->max_free_members = d.max_free_members;
  options->cross_check = d.cross_check ? 1 : 0;
}

kh_status kh_satisfiable(const kh_formula* f,
                         const kh_decision_options* options, int* sat,
                         char** report_json) {
  if (!f) return null_argument("f");
  if (!sat) return null_argument("sat");
  return guarded([&] {
    auto r = knowhow::satisfiable(f->formula, decision_options(options));
    *sat = r.satisfiable ? 1 : 0;
    if (!report_json) return;
    ordered_json doc;
    doc["formula"] = abbreviated(f->formula);
    doc["satisfiable"] = r.satisfiable;
    doc["canonical_states"] = r.canonical_states;
    doc["cross_check"] = cross_check_name(r.cross_check);
    if (r.satisfiable) {
      doc["state"] = *r.state;
      doc["model"] = model_json(*r.model);
    }
    *report_json = duplicate(doc.dump());
  });
}

kh_status kh_valid(const kh_formula* f, const kh_decision_options* options,
                   int* valid, char** report_json) {
  if (!f) return null_argument("f");
  if (!valid) return null_argument("valid");
  return guarded([&] {
    auto r = knowhow::satisfiable(knowhow::Formula::negation(f->formula),
                                  decision_options(options));
    *valid = r.satisfiable ? 0 : 1;
    if (!report_json) return;
    ordered_json doc;
    doc["formula"] = abbreviated(f->formula);
    doc["valid"] = !r.satisfiable;
    doc["canonical_states"] = r.canonical_states;
    doc["cross_check"] = cross_check_name(r.cross_check);
    if (r.satisfiable) {
      ordered_json cm;
      cm["state"] = *r.state;
      cm["model"] = model_json(*r.model);
      doc["countermodel"] = std::move(cm);
    }
    *report_json = duplicate(doc.dump());
  });
}

kh_status kh_proof_parse(const char* json, kh_proof** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new kh_proof{knowhow::parse_proof(json)}; });
}

kh_status kh_proof_from_file(const char* path, kh_proof** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new kh_proof{knowhow::load_proof_file(path)}; });
}

void kh_proof_free(kh_proof* p) { delete p; }

kh_status kh_proof_check(const kh_proof* p, int* ok, char** report_json) {
  if (!p) return null_argument("p");
  if (!ok) return null_argument("ok");
  return guarded([&] {
    knowhow::ProofCheck r = knowhow::check_proof(p->script);
    *ok = r.ok() ? 1 : 0;
    if (!report_json) return;
    ordered_json doc;
    doc["ok"] = r.ok();
    if (r.ok()) {
      doc["steps"] = p->script.steps.size();
      if (p->script.steps.empty())
        doc["conclusion"] = nullptr;
      else
        doc["conclusion"] = abbreviated(p->script.steps.back().formula);
    } else {
      doc["step"] = r.step;
      doc["reason"] = knowhow::failure_name(r.failure);
      doc["detail"] = r.detail;
    }
    *report_json = duplicate(doc.dump());
  });
}

void kh_gen_params_default(kh_gen_params* params) {
  if (!params) return;
  knowhow::GenParams d;
  params->seed = d.seed;
  params->max_states = d.max_states;
  params->max_actions = d.max_actions;
  params->transition_density = d.transition_density;
  params->block_merge_prob = d.block_merge_prob;
  params->props = nullptr;
  params->num_props = 0;
}

kh_status kh_fuzz_validity(const kh_formula* f, uint64_t trials,
                           const kh_gen_params* params,
                           int* counterexample_found, char** report_json) {
  if (!f) return null_argument("f");
  if (!counterexample_found) return null_argument("counterexample_found");
  knowhow::GenParams gp;
  if (params) {
    if (params->transition_density < 0 || params->transition_density > 1 ||
        params->block_merge_prob < 0 || params->block_merge_prob > 1)
      return fail(KH_ERR_INVALID_ARGUMENT, "probabilities must lie in [0, 1]");
    gp.seed = params->seed;
    gp.max_states = params->max_states;
    gp.max_actions = params->max_actions;
    gp.transition_density = params->transition_density;
    gp.block_merge_prob = params->block_merge_prob;
    if (params->props) {
      gp.props.clear();
      for (size_t i = 0; i < params->num_props; ++i) {
        if (!params->props[i]) return null_argument("props[i]");
        gp.props.emplace_back(params->props[i]);
      }
    }
  }
  return guarded([&] {
    auto r = knowhow::fuzz_validity(f->formula, trials, gp);
    *counterexample_found = r.counterexample ? 1 : 0;
    if (!report_json) return;
    ordered_json doc;
    doc["formula"] = abbreviated(f->formula);
    doc["trials"] = r.trials;
    doc["seed"] = gp.seed;
    doc["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(r.elapsed).count();
    if (r.counterexample) {
      ordered_json ce;
      ce["trial"] = r.counterexample->trial;
      ce["state"] = r.counterexample->state;
      ce["model"] = model_json(r.counterexample->model);
      doc["counterexample"] = std::move(ce);
    } else {
      doc["counterexample"] = nullptr;
    }
    *report_json = duplicate(doc.dump());
  });
}

}  // extern "C"
