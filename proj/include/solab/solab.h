/*
 * Copyright 2026 The so-lab Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the so-lab library. Every function returns a solab_status;
 * on failure, solab_last_error() describes the problem (per thread). Strings
 * returned through char** are heap-allocated and released with
 * solab_string_free.
 */
#ifndef SOLAB_SOLAB_H
#define SOLAB_SOLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SOLAB_API __declspec(dllexport)
#else
#define SOLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum solab_status {
  SOLAB_OK = 0,
  SOLAB_ERR_INPUT = 1,    /* malformed input, syntax or validation error */
  SOLAB_ERR_BUDGET = 2,   /* an enumeration budget was exceeded */
  SOLAB_ERR_EVAL = 3,     /* evaluation error (unknown symbol, arity outside a relation universe) */
  SOLAB_ERR_INTERNAL = 4  /* invariant violation inside the library */
} solab_status;

typedef enum solab_format { SOLAB_FORMAT_TEXT = 0, SOLAB_FORMAT_JSON = 1 } solab_format;

typedef enum solab_semantics { SOLAB_SEMANTICS_FULL = 0, SOLAB_SEMANTICS_FO = 1 } solab_semantics;

typedef struct solab_config solab_config;
typedef struct solab_formula solab_formula;
typedef struct solab_structure solab_structure;
typedef struct solab_family solab_family;
typedef struct solab_fragment solab_fragment;
typedef struct solab_type_context solab_type_context;

SOLAB_API const char* solab_last_error(void);
SOLAB_API void solab_string_free(char* s);
SOLAB_API const char* solab_version(void);

/* Configuration: budgets, seed (default 42), output format, suite sizes. */
SOLAB_API solab_status solab_config_new(solab_config** out);
SOLAB_API void solab_config_free(solab_config* c);
SOLAB_API solab_status solab_config_set_relation_budget(solab_config* c, uint64_t budget);
SOLAB_API solab_status solab_config_set_product_budget(solab_config* c, uint64_t budget);
SOLAB_API solab_status solab_config_set_use_solver(solab_config* c, int enabled);
SOLAB_API solab_status solab_config_set_seed(solab_config* c, uint64_t seed);
SOLAB_API solab_status solab_config_set_trials(solab_config* c, int trials);
SOLAB_API solab_status solab_config_set_arity_bound(solab_config* c, int bound);
SOLAB_API solab_status solab_config_set_size(solab_config* c, int n);
SOLAB_API solab_status solab_config_set_max_size(solab_config* c, int nmax);
SOLAB_API solab_status solab_config_set_format(solab_config* c, solab_format format);
SOLAB_API solab_status solab_config_set_timing(solab_config* c, int enabled);

/* Formulas. */
SOLAB_API solab_status solab_formula_parse(const char* text, solab_formula** out);
SOLAB_API solab_status solab_formula_builtin(const char* key, solab_formula** out);
SOLAB_API void solab_formula_free(solab_formula* f);
SOLAB_API solab_status solab_formula_to_string(const solab_formula* f, char** out);
/* "Delta0", "Sigma(n)", "Pi(n)" or "NonPrenex". */
SOLAB_API solab_status solab_formula_classify(const solab_formula* f, char** out);
SOLAB_API solab_status solab_formula_prenex(const solab_formula* f, solab_formula** out);
/* Report on the formula's shape; validates against `signature_of` when non-null. */
SOLAB_API solab_status solab_formula_describe(const solab_formula* f, const solab_structure* signature_of,
                                              const solab_config* c, char** out);

/* Structures and families. */
SOLAB_API solab_status solab_structure_load(const char* path, solab_structure** out);
SOLAB_API solab_status solab_structure_from_json(const char* text, solab_structure** out);
SOLAB_API solab_status solab_structure_cycle(int n, solab_structure** out);
SOLAB_API solab_status solab_structure_double_cycle(int n, solab_structure** out);
SOLAB_API void solab_structure_free(solab_structure* s);
SOLAB_API solab_status solab_structure_to_json(const solab_structure* s, char** out);

/* A directory of structure files or a JSON array. */
SOLAB_API solab_status solab_family_load(const char* path, solab_family** out);
SOLAB_API void solab_family_free(solab_family* f);
SOLAB_API size_t solab_family_size(const solab_family* f);

SOLAB_API solab_status solab_fragment_load(const char* path, solab_fragment** out);
SOLAB_API solab_status solab_fragment_from_json(const char* text, solab_fragment** out);
SOLAB_API void solab_fragment_free(solab_fragment* f);

SOLAB_API solab_status solab_type_context_load(const char* path, solab_type_context** out);
SOLAB_API solab_status solab_type_context_from_json(const char* text, solab_type_context** out);
SOLAB_API void solab_type_context_free(solab_type_context* t);

/* Evaluation. `truth` receives 0 or 1. */
SOLAB_API solab_status solab_eval(const solab_structure* s, const solab_formula* f, const solab_config* c,
                                  solab_semantics semantics, int* truth);

/* Ultraproduct of a family by an ultrafilter literal ("principal:i",
 * "principal:i/m", "A x B"); reports the quotient and its representatives. */
SOLAB_API solab_status solab_ultraproduct(const solab_family* family, const char* ultrafilter,
                                          const solab_config* c, char** out);

/* Henkin truth of f in the ultraproduct's decomposable-Henkin model. */
SOLAB_API solab_status solab_henkin_eval(const solab_family* family, const char* ultrafilter,
                                         const solab_formula* f, const solab_config* c, int* truth,
                                         char** out);

/* "los", "fubini", "metric" or "omission". For "los" with a family, an
 * ultrafilter and a formula, a single comparison runs; otherwise the seeded
 * suite. `pass` receives 0 or 1. */
SOLAB_API solab_status solab_check(const char* which, const solab_family* family, const char* ultrafilter,
                                   const solab_formula* f, const solab_config* c, int* pass, char** out);

/* Separating formula for two classes over a fragment; `found` receives 0 or 1. */
SOLAB_API solab_status solab_separate(const solab_family* k, const solab_family* l, const solab_fragment* gamma,
                                      const solab_config* c, int* found, char** out);

/* Realized types of a structure. */
SOLAB_API solab_status solab_types(const solab_structure* s, const solab_type_context* ctx,
                                   const solab_config* c, char** out);

/* Omission analysis of K inside a pool; `pass` receives whether the
 * omission axiomatization by the omitted types holds. */
SOLAB_API solab_status solab_omission(const solab_family* k, const solab_family* pool,
                                      const solab_type_context* ctx, const solab_config* c, int* pass,
                                      char** out);

/* Principal-scale inseparability search; `found` receives 1 for a witness. */
SOLAB_API solab_status solab_insep(const solab_family* ks, const solab_family* ls, const solab_config* c,
                                   int* found, char** out);

/* np_example, infinity, los_suite, fubini_suite, separation, metric_suite,
 * omission_suite. */
SOLAB_API solab_status solab_demo(const char* name, const solab_config* c, int* pass, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SOLAB_SOLAB_H */
