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

/* C interface to the knowhow library. Objects are opaque handles released by
 * their *_free function. Every function returning kh_status leaves a
 * description of the most recent failure on the calling thread in
 * kh_last_error_message(). Strings returned through char** are owned by the
 * caller and released with kh_string_free(). */

#ifndef KNOWHOW_KNOWHOW_H_
#define KNOWHOW_KNOWHOW_H_

#include <stddef.h>
#include <stdint.h>

#if defined(KNOWHOW_BUILDING_LIBRARY)
#define KH_API __attribute__((visibility("default")))
#else
#define KH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kh_status {
  KH_OK = 0,
  KH_ERR_INVALID_ARGUMENT = 1, /* null pointer or out-of-range option */
  KH_ERR_SYNTAX = 2,           /* formula concrete syntax */
  KH_ERR_RESERVED_WORD = 3,    /* K, Kh, true or false used as a name */
  KH_ERR_PARSE = 4,            /* malformed model, strategy or proof */
  KH_ERR_VALIDATION = 5,       /* well-formed input violating invariants */
  KH_ERR_UNKNOWN_STATE = 6,
  KH_ERR_TOO_LARGE = 7,        /* an enumeration cap was exceeded */
  KH_ERR_INCONSISTENT = 8,     /* internal cross-check disagreement */
  KH_ERR_INTERNAL = 9
} kh_status;

typedef struct kh_formula kh_formula;
typedef struct kh_model kh_model;
typedef struct kh_proof kh_proof;

KH_API const char* kh_version(void);
KH_API const char* kh_status_name(kh_status status);
KH_API const char* kh_last_error_message(void);
KH_API void kh_string_free(char* s);

/* Formulas. */
KH_API kh_status kh_formula_parse(const char* text, kh_formula** out);
KH_API void kh_formula_free(kh_formula* f);
/* abbreviated != 0 reconstructs ->, |, <->, true and false. */
KH_API kh_status kh_formula_to_string(const kh_formula* f, int abbreviated,
                                      char** out);
/* Abstract syntax tree as nested JSON objects. */
KH_API kh_status kh_formula_to_json(const kh_formula* f, char** out);
KH_API kh_status kh_formula_size(const kh_formula* f, size_t* out);
/* Head constructor: "prop", "not", "and", "K" or "Kh" (static storage). */
KH_API kh_status kh_formula_head(const kh_formula* f, const char** out);
/* Operand of a not-, K- or Kh-headed formula as a new handle. */
KH_API kh_status kh_formula_operand(const kh_formula* f, kh_formula** out);

/* Models. */
KH_API kh_status kh_model_from_json(const char* text, kh_model** out);
KH_API kh_status kh_model_from_file(const char* path, kh_model** out);
KH_API void kh_model_free(kh_model* m);
KH_API kh_status kh_model_to_json(const kh_model* m, char** out);
/* Quotient graph: classes, members, uniform actions, class successors. */
KH_API kh_status kh_model_classes_json(const kh_model* m, char** out);

/* Model checking and strategies. */
KH_API kh_status kh_model_check(const kh_model* m, const char* state,
                                const kh_formula* f, int* holds);
/* Witness for Kh f at state. *found is 0 and *strategy_json NULL when
 * Kh f is false there. */
KH_API kh_status kh_model_synthesize(const kh_model* m, const char* state,
                                     const kh_formula* f, int* found,
                                     char** strategy_json);
/* Checks a strategy against the goal `goal` from `state`. *ok receives the
 * verdict and *report_json its explanation. */
KH_API kh_status kh_strategy_verify(const kh_model* m,
                                    const char* strategy_json,
                                    const char* state, const kh_formula* goal,
                                    int* ok, char** report_json);

/* Decision procedure. */
typedef struct kh_decision_options {
  size_t max_free_members; /* closure members enumerated freely */
  int cross_check;         /* confirm UNSAT by bounded model search */
} kh_decision_options;

KH_API void kh_decision_options_default(kh_decision_options* options);
/* options may be NULL for the defaults. report_json may be NULL. */
KH_API kh_status kh_satisfiable(const kh_formula* f,
                                const kh_decision_options* options, int* sat,
                                char** report_json);
KH_API kh_status kh_valid(const kh_formula* f,
                          const kh_decision_options* options, int* valid,
                          char** report_json);

/* Proofs. */
KH_API kh_status kh_proof_parse(const char* json, kh_proof** out);
KH_API kh_status kh_proof_from_file(const char* path, kh_proof** out);
KH_API void kh_proof_free(kh_proof* p);
KH_API kh_status kh_proof_check(const kh_proof* p, int* ok,
                                char** report_json);

/* Soundness fuzzing. */
typedef struct kh_gen_params {
  uint64_t seed;
  size_t max_states;
  size_t max_actions;
  double transition_density;
  double block_merge_prob;
  const char* const* props; /* NULL selects {"p", "q"} */
  size_t num_props;
} kh_gen_params;

KH_API void kh_gen_params_default(kh_gen_params* params);
/* params may be NULL for the defaults. */
KH_API kh_status kh_fuzz_validity(const kh_formula* f, uint64_t trials,
                                  const kh_gen_params* params,
                                  int* counterexample_found,
                                  char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* KNOWHOW_KNOWHOW_H_ */
