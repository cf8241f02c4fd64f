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

#ifndef KNOWHOW_PROOFS_HPP_
#define KNOWHOW_PROOFS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knowhow/formula.hpp"

namespace knowhow {

enum class AxiomName {
  kDistK,
  kT,
  kFour,
  kFive,
  kAxKtoKh,
  kAxKhtoKhK,
  kAxKhtoKKh,
  kAxKhKh,
  kAxKhbot,
};

inline constexpr AxiomName kAllAxioms[] = {
    AxiomName::kDistK,     AxiomName::kT,         AxiomName::kFour,
    AxiomName::kFive,      AxiomName::kAxKtoKh,   AxiomName::kAxKhtoKhK,
    AxiomName::kAxKhtoKKh, AxiomName::kAxKhKh,    AxiomName::kAxKhbot,
};

// Name used in proof files: "DISTK", "T", "4", "5", "AxKtoKh", ...
std::string_view axiom_rule_name(AxiomName name);
std::optional<AxiomName> axiom_from_rule_name(std::string_view rule);

// The schema over the letters p and q; the falsum proposition is literal.
const Formula& axiom_schema(AxiomName name);

using Substitution = std::map<std::string, Formula>;

// Simultaneous replacement of propositions by formulas.
Formula apply_substitution(const Formula& f, const Substitution& sigma);

// The substitution for the schema letters under which the schema becomes f.
std::optional<Substitution> match_axiom(AxiomName name, const Formula& f);
bool is_axiom_instance(AxiomName name, const Formula& f);

inline constexpr std::size_t kMaxTautologyAtoms = 20;

// Propositional validity, reading maximal K-, Kh- and proposition-headed
// subformulas as opaque atoms. Throws TooManyAtoms.
bool is_tautology(const Formula& f);

enum class Rule {
  kTaut,
  kAxiom,
  kMP,
  kNecK,
  kMonoKh,
  kSub,
};

struct Step {
  Formula formula;
  Rule rule = Rule::kTaut;
  AxiomName axiom = AxiomName::kDistK;  // meaningful for Rule::kAxiom
  std::vector<std::int64_t> premises;
  Substitution subst;  // meaningful for Rule::kSub
};

struct ProofScript {
  std::vector<Step> steps;
};

// Throws ParseError on malformed JSON, unknown rules or bad formulas.
ProofScript parse_proof(std::string_view json);
ProofScript load_proof_file(const std::string& path);
std::string proof_to_json(const ProofScript& ps, int indent = -1);
std::string_view rule_name(const Step& step);

enum class ProofFailure {
  kNone,
  kNotAnInstance,
  kBadPremiseShape,
  kIndexOutOfRange,
  kSubstitutionMismatch,
};

const char* failure_name(ProofFailure failure);

struct ProofCheck {
  ProofFailure failure = ProofFailure::kNone;
  std::size_t step = 0;
  std::string detail;

  bool ok() const { return failure == ProofFailure::kNone; }
};

// Checks every step; reports the first invalid one.
ProofCheck check_proof(const ProofScript& ps);

}  // namespace knowhow

#endif  // KNOWHOW_PROOFS_HPP_
