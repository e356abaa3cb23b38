// Copyright 2026 The ccat Authors
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


/* C interface to the ccat library.
 *
 * All handles are opaque. Functions return CCAT_OK or an error status; the
 * message and source position of the last error on the calling thread are
 * available through ccat_last_error_*. Strings returned through `char**`
 * outputs are owned by the caller and released with ccat_string_free. */
#ifndef CCAT_CCAT_H
#define CCAT_CCAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CCAT_API __declspec(dllexport)
#else
#define CCAT_API __attribute__((visibility("default")))
#endif

typedef enum ccat_status {
  CCAT_OK = 0,
  CCAT_ERR_UNKNOWN_NAME,
  CCAT_ERR_COMPOSITION_MISMATCH,
  CCAT_ERR_DAGGER_UNAVAILABLE,
  CCAT_ERR_TRACE_SHAPE_MISMATCH,
  CCAT_ERR_NOT_A_PERMUTATION,
  CCAT_ERR_TYPE_MISMATCH,
  CCAT_ERR_NO_SUCH_MATCH,
  CCAT_ERR_DIMENSION_MISMATCH,
  CCAT_ERR_NOT_A_SEMILATTICE,
  CCAT_ERR_UNBOUND_GENERATOR,
  CCAT_ERR_CONJ_UNAVAILABLE,
  CCAT_ERR_KIND_MISMATCH,
  CCAT_ERR_SHAPE_MISMATCH,
  CCAT_ERR_PRECONDITION_UNMET,
  CCAT_ERR_NOT_INVERTIBLE,
  CCAT_ERR_LEX,
  CCAT_ERR_PARSE,
  CCAT_ERR_RESOLVE,
  CCAT_ERR_MODEL,
  CCAT_ERR_USAGE,
  /* A null handle or output pointer was passed. */
  CCAT_ERR_INVALID_ARGUMENT,
  CCAT_ERR_INTERNAL
} ccat_status;

typedef struct ccat_program ccat_program;
typedef struct ccat_model ccat_model;
typedef struct ccat_report ccat_report;

CCAT_API const char* ccat_version(void);
/* Stable identifier such as "CompositionMismatch". */
CCAT_API const char* ccat_status_name(ccat_status s);

/* Details of the last failed call on this thread. Line and column are 0 when
 * the error has no source position. */
CCAT_API const char* ccat_last_error_message(void);
CCAT_API int ccat_last_error_line(void);
CCAT_API int ccat_last_error_column(void);
/* JSON object {code, message, line?, column?, expected?, path?}. */
CCAT_API const char* ccat_last_error_json(void);

CCAT_API void ccat_string_free(char* s);

/* Programs: declarations in the term language. */
CCAT_API ccat_status ccat_program_parse(const char* text, ccat_program** out);
CCAT_API ccat_status ccat_program_load(const char* path, ccat_program** out);
CCAT_API void ccat_program_free(ccat_program* p);
CCAT_API size_t ccat_program_term_count(const ccat_program* p);
CCAT_API const char* ccat_program_term_name(const ccat_program* p, size_t index);
/* JSON summary of objects, generators, terms with their types and equations. */
CCAT_API ccat_status ccat_program_check_json(const ccat_program* p, char** json);
/* Canonical re-print of the source. */
CCAT_API ccat_status ccat_program_print(const ccat_program* p, char** text);
/* `expr` is a term name or any expression over the program's signature. */
CCAT_API ccat_status ccat_term_type(const ccat_program* p, const char* expr, char** dom,
                                    char** cod);
CCAT_API ccat_status ccat_term_equal(const ccat_program* p, const char* lhs, const char* rhs,
                                     int* equal);
CCAT_API ccat_status ccat_term_render_dot(const ccat_program* p, const char* expr, char** dot);

/* Models. `program` may be null; when given, generators listed as bare entry
 * arrays take their types from it. A negative tolerance keeps the file's. */
CCAT_API ccat_status ccat_model_load(const char* path, const ccat_program* program,
                                     double tolerance, ccat_model** out);
CCAT_API ccat_status ccat_model_parse(const char* json, const ccat_program* program,
                                      double tolerance, ccat_model** out);
/* Qubit over complex rationals with the four Bell branches. */
CCAT_API ccat_status ccat_model_demo_teleport(ccat_model** out);
CCAT_API void ccat_model_free(ccat_model* m);
CCAT_API ccat_status ccat_model_json(const ccat_model* m, char** json);

/* Evaluates `expr` in the model. The JSON result has dom, cod, the matrix
 * (entries as exact strings), its text rendering and the closed-loop values. */
CCAT_API ccat_status ccat_eval_json(const ccat_program* p, const ccat_model* m, const char* expr,
                                    char** json);

/* Suites: scalars, dagger, cloning, collapse, deleting, product, teleport,
 * all. A zero budget or sample count keeps the default. */
typedef struct ccat_verify_options {
  size_t budget;
  size_t samples;
  uint64_t seed;
} ccat_verify_options;

CCAT_API ccat_status ccat_verify(const ccat_model* m, const char* suite,
                                 const ccat_verify_options* options, ccat_report** out);
CCAT_API int ccat_report_passed(const ccat_report* r);
CCAT_API size_t ccat_report_entry_count(const ccat_report* r);
CCAT_API ccat_status ccat_report_json(const ccat_report* r, char** json);
CCAT_API ccat_status ccat_report_text(const ccat_report* r, char** text);
CCAT_API void ccat_report_free(ccat_report* r);

#ifdef __cplusplus
}
#endif

#endif /* CCAT_CCAT_H */
