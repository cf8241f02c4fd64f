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

#include "knowhow/proofs.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "knowhow/error.hpp"

namespace knowhow {
namespace {

struct AxiomEntry {
  AxiomName name;
  std::string_view rule;
  std::string_view schema;
};

constexpr AxiomEntry kAxiomTable[] = {
    {AxiomName::kDistK, "DISTK", "K p & K (p -> q) -> K q"},
    {AxiomName::kT, "T", "K p -> p"},
    {AxiomName::kFour, "4", "K p -> K K p"},
    {AxiomName::kFive, "5", "~K p -> K ~K p"},
    {AxiomName::kAxKtoKh, "AxKtoKh", "K p -> Kh p"},
    {AxiomName::kAxKhtoKhK, "AxKhtoKhK", "Kh p -> Kh K p"},
    {AxiomName::kAxKhtoKKh, "AxKhtoKKh", "Kh p -> K Kh p"},
    {AxiomName::kAxKhKh, "AxKhKh", "Kh Kh p -> Kh p"},
    {AxiomName::kAxKhbot, "AxKhbot", "Kh false -> false"},
};

const AxiomEntry& entry(AxiomName name) {
  return kAxiomTable[static_cast<std::size_t>(name)];
}

bool is_schema_letter(const std::string& name) {
  return name == "p" || name == "q";
}

bool unify(const Formula& pattern, const Formula& f, Substitution& sigma) {
  if (pattern.is(Op::kProp) && is_schema_letter(pattern.name())) {
    auto [it, fresh] = sigma.emplace(pattern.name(), f);
    return fresh || it->second == f;
  }
  if (pattern.op() != f.op()) return false;
  switch (pattern.op()) {
    case Op::kProp:
      return pattern.name() == f.name();
    case Op::kAnd:
      return unify(pattern.lhs(), f.lhs(), sigma) &&
             unify(pattern.rhs(), f.rhs(), sigma);
    default:
      return unify(pattern.operand(), f.operand(), sigma);
  }
}

void collect_atoms(const Formula& f, FormulaSet& atoms) {
  switch (f.op()) {
    case Op::kNot:
      collect_atoms(f.operand(), atoms);
      return;
    case Op::kAnd:
      collect_atoms(f.lhs(), atoms);
      collect_atoms(f.rhs(), atoms);
      return;
    default:
      atoms.insert(f);
  }
}

bool truth(const Formula& f, const std::map<Formula, bool>& row) {
  switch (f.op()) {
    case Op::kNot:
      return !truth(f.operand(), row);
    case Op::kAnd:
      return truth(f.lhs(), row) && truth(f.rhs(), row);
    default:
      return row.at(f);
  }
}

std::string_view rule_of(Rule rule) {
  switch (rule) {
    case Rule::kTaut: return "TAUT";
    case Rule::kAxiom: return "axiom";
    case Rule::kMP: return "MP";
    case Rule::kNecK: return "NECK";
    case Rule::kMonoKh: return "MONOKh";
    case Rule::kSub: return "SUB";
  }
  return "";
}

Formula parse_step_formula(const std::string& text, std::size_t step) {
  try {
    return parse(text);
  } catch (const Error& e) {
    throw ParseError("step " + std::to_string(step) + ": " + e.what());
  }
}

}  // namespace

std::string_view axiom_rule_name(AxiomName name) { return entry(name).rule; }

std::optional<AxiomName> axiom_from_rule_name(std::string_view rule) {
  for (const auto& e : kAxiomTable)
    if (e.rule == rule) return e.name;
  return std::nullopt;
}

const Formula& axiom_schema(AxiomName name) {
  static const std::vector<Formula> schemas = [] {
    std::vector<Formula> out;
    for (const auto& e : kAxiomTable) out.push_back(parse(e.schema));
    return out;
  }();
  return schemas[static_cast<std::size_t>(name)];
}

Formula apply_substitution(const Formula& f, const Substitution& sigma) {
  switch (f.op()) {
    case Op::kProp: {
      auto it = sigma.find(f.name());
      return it == sigma.end() ? f : it->second;
    }
    case Op::kNot:
      return Formula::negation(apply_substitution(f.operand(), sigma));
    case Op::kAnd:
      return Formula::conjunction(apply_substitution(f.lhs(), sigma),
                                  apply_substitution(f.rhs(), sigma));
    case Op::kK:
      return Formula::knows(apply_substitution(f.operand(), sigma));
    case Op::kKh:
      return Formula::knows_how(apply_substitution(f.operand(), sigma));
  }
  return f;
}

std::optional<Substitution> match_axiom(AxiomName name, const Formula& f) {
  Substitution sigma;
  if (!unify(axiom_schema(name), f, sigma)) return std::nullopt;
  return sigma;
}

bool is_axiom_instance(AxiomName name, const Formula& f) {
  return match_axiom(name, f).has_value();
}

bool is_tautology(const Formula& f) {
  FormulaSet atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > kMaxTautologyAtoms)
    throw TooManyAtoms(atoms.size(), kMaxTautologyAtoms);
  const std::vector<Formula> order(atoms.begin(), atoms.end());
  std::map<Formula, bool> row;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << order.size());
       ++bits) {
    for (std::size_t i = 0; i < order.size(); ++i)
      row[order[i]] = (bits >> i) & 1;
    if (!truth(f, row)) return false;
  }
  return true;
}

std::string_view rule_name(const Step& step) {
  return step.rule == Rule::kAxiom ? axiom_rule_name(step.axiom)
                                   : rule_of(step.rule);
}

ProofScript parse_proof(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("proof is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array())
    throw ParseError("proof must be an object with a \"steps\" array");
  for (const auto& [key, _] : doc.items())
    if (key != "steps")
      throw ParseError("unexpected key \"" + key + "\" in proof");

  ProofScript ps;
  for (const auto& js : doc["steps"]) {
    const std::size_t i = ps.steps.size();
    const std::string where = "step " + std::to_string(i);
    if (!js.is_object()) throw ParseError(where + " must be an object");
    for (const auto& [key, _] : js.items())
      if (key != "formula" && key != "rule" && key != "premises" &&
          key != "subst")
        throw ParseError(where + ": unexpected key \"" + key + "\"");
    if (!js.contains("formula") || !js["formula"].is_string())
      throw ParseError(where + " lacks a \"formula\" string");
    if (!js.contains("rule") || !js["rule"].is_string())
      throw ParseError(where + " lacks a \"rule\" string");

    Step step{parse_step_formula(js["formula"].get<std::string>(), i),
              Rule::kTaut, AxiomName::kDistK, {}, {}};
    const std::string rule = js["rule"].get<std::string>();
    if (auto axiom = axiom_from_rule_name(rule)) {
      step.rule = Rule::kAxiom;
      step.axiom = *axiom;
    } else if (rule == "TAUT") {
      step.rule = Rule::kTaut;
    } else if (rule == "MP") {
      step.rule = Rule::kMP;
    } else if (rule == "NECK") {
      step.rule = Rule::kNecK;
    } else if (rule == "MONOKh") {
      step.rule = Rule::kMonoKh;
    } else if (rule == "SUB") {
      step.rule = Rule::kSub;
    } else {
      throw ParseError(where + ": unknown rule \"" + rule + "\"");
    }

    if (js.contains("premises")) {
      if (!js["premises"].is_array())
        throw ParseError(where + ": \"premises\" must be an array");
      for (const auto& p : js["premises"]) {
        if (!p.is_number_integer())
          throw ParseError(where + ": premises must be integers");
        step.premises.push_back(p.get<std::int64_t>());
      }
    }
    if (js.contains("subst")) {
      if (!js["subst"].is_object())
        throw ParseError(where + ": \"subst\" must be an object");
      for (const auto& [prop, value] : js["subst"].items()) {
        if (!is_valid_proposition_name(prop) || !value.is_string())
          throw ParseError(where + ": bad substitution entry \"" + prop + "\"");
        step.subst.emplace(prop,
                           parse_step_formula(value.get<std::string>(), i));
      }
    }
    ps.steps.push_back(std::move(step));
  }
  return ps;
}

ProofScript load_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read proof file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_proof(buf.str());
}

std::string proof_to_json(const ProofScript& ps, int indent) {
  nlohmann::ordered_json doc;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& step : ps.steps) {
    nlohmann::ordered_json js;
    js["formula"] = print(step.formula, PrintStyle::kAbbreviated);
    js["rule"] = std::string(rule_name(step));
    if (!step.premises.empty()) js["premises"] = step.premises;
    if (!step.subst.empty()) {
      nlohmann::ordered_json sub = nlohmann::ordered_json::object();
      for (const auto& [prop, g] : step.subst)
        sub[prop] = print(g, PrintStyle::kAbbreviated);
      js["subst"] = sub;
    }
    steps.push_back(std::move(js));
  }
  doc["steps"] = std::move(steps);
  return doc.dump(indent);
}

const char* failure_name(ProofFailure failure) {
  switch (failure) {
    case ProofFailure::kNone: return "ok";
    case ProofFailure::kNotAnInstance: return "not-an-instance";
    case ProofFailure::kBadPremiseShape: return "bad-premise-shape";
    case ProofFailure::kIndexOutOfRange: return "index-out-of-range";
    case ProofFailure::kSubstitutionMismatch: return "substitution-mismatch";
  }
  return "unknown";
}

ProofCheck check_proof(const ProofScript& ps) {
  auto fail = [](std::size_t i, ProofFailure why, std::string detail) {
    return ProofCheck{why, i, std::move(detail)};
  };
  for (std::size_t i = 0; i < ps.steps.size(); ++i) {
    const Step& step = ps.steps[i];
    const Formula& f = step.formula;

    std::size_t arity = 0;
    switch (step.rule) {
      case Rule::kTaut:
      case Rule::kAxiom: arity = 0; break;
      case Rule::kMP: arity = 2; break;
      default: arity = 1; break;
    }
    if (step.premises.size() != arity)
      return fail(i, ProofFailure::kBadPremiseShape,
                  std::string(rule_name(step)) + " takes " +
                      std::to_string(arity) + " premise(s)");
    for (std::int64_t p : step.premises)
      if (p < 0 || static_cast<std::uint64_t>(p) >= i)
        return fail(i, ProofFailure::kIndexOutOfRange,
                    "premise " + std::to_string(p) + " is not an earlier step");
    auto premise = [&](std::size_t k) -> const Formula& {
      return ps.steps[static_cast<std::size_t>(step.premises[k])].formula;
    };

    switch (step.rule) {
      case Rule::kTaut:
        if (!is_tautology(f))
          return fail(i, ProofFailure::kNotAnInstance,
                      "not a propositional tautology");
        break;
      case Rule::kAxiom:
        if (!is_axiom_instance(step.axiom, f))
          return fail(i, ProofFailure::kNotAnInstance,
                      "not an instance of " +
                          std::string(axiom_rule_name(step.axiom)));
        break;
      case Rule::kMP:
        if (premise(1) != implication(premise(0), f))
          return fail(i, ProofFailure::kBadPremiseShape,
                      "second premise is not first premise -> conclusion");
        break;
      case Rule::kNecK:
        if (f != Formula::knows(premise(0)))
          return fail(i, ProofFailure::kBadPremiseShape,
                      "conclusion is not K of the premise");
        break;
      case Rule::kMonoKh: {
        Formula a = f, b = f;
        if (!match_implication(premise(0), &a, &b) ||
            f != implication(Formula::knows_how(a), Formula::knows_how(b)))
          return fail(i, ProofFailure::kBadPremiseShape,
                      "conclusion is not Kh a -> Kh b for premise a -> b");
        break;
      }
      case Rule::kSub:
        if (f != apply_substitution(premise(0), step.subst))
          return fail(i, ProofFailure::kSubstitutionMismatch,
                      "conclusion differs from the substituted premise");
        break;
    }
  }
  return {};
}

}  // namespace knowhow
