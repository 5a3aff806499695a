/*
Copyright 2026 The adlasso Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

/* C interface to the adlasso library.
 *
 * Handles are opaque. Every call that can fail returns an adl_status; on
 * failure adl_last_error() holds a message for the calling thread. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with adl_string_free. Configs are JSON objects; unknown keys are
 * rejected with ADL_E_INVALID_ARGUMENT.
 */
#ifndef ADLASSO_ADLASSO_H_
#define ADLASSO_ADLASSO_H_

#include <stddef.h>

#if defined(ADLASSO_BUILDING)
#define ADL_API __attribute__((visibility("default")))
#else
#define ADL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adl_status {
  ADL_OK = 0,
  ADL_E_INVALID_ARGUMENT = 1,
  ADL_E_INVALID_DIMS = 2,
  ADL_E_NOT_SYMMETRIC = 3,
  ADL_E_INDEFINITE_MATRIX = 4,
  ADL_E_NO_CONVERGENCE = 5,
  ADL_E_EIGEN_FAILURE = 6,
  ADL_E_SINGULAR_GRAM = 7,
  ADL_E_SINGULAR_SUBMATRIX = 8,
  ADL_E_NON_PSD_COVARIANCE = 9,
  ADL_E_LAMBDA_ZERO_DUAL = 10,
  ADL_E_KKT_VIOLATION = 11,
  ADL_E_MISSING_TRUTH = 12,
  ADL_E_MISSING_CLEAN_DATA = 13,
  ADL_E_DEGENERATE_DIRECTION = 14,
  ADL_E_PARSE_ERROR = 15,
  ADL_E_MISSING_TARGET = 16,
  ADL_E_EMPTY_DATASET = 17,
  ADL_E_UNKNOWN_CLAIM = 18,
  ADL_E_INVALID_DELTA_RANGE = 19,
  ADL_E_IO = 20,
  ADL_E_INTERNAL = 21
} adl_status;

typedef struct adl_instance adl_instance;
typedef struct adl_solution adl_solution;

ADL_API const char* adl_version(void);
/* Short tag such as "InvalidDims". */
ADL_API const char* adl_status_string(adl_status status);
/* Message of the last failed call on this thread; "" when none. */
ADL_API const char* adl_last_error(void);
ADL_API void adl_string_free(char* s);

/* Parses and validates a config without running it. kind is one of "gen",
 * "solve", "sweep", "verify", "f1". On success *resolved (if non-null)
 * receives the config with defaults filled in. */
ADL_API adl_status adl_config_check(const char* kind, const char* config_json, char** resolved);

/* Synthetic instance from a "gen" config. */
ADL_API adl_status adl_instance_generate(const char* config_json, adl_instance** out);
ADL_API adl_status adl_instance_load(const char* dir, adl_instance** out);
/* config_json (may be null) is echoed into the manifest. */
ADL_API adl_status adl_instance_save(const adl_instance* inst, const char* dir, const char* config_json);
ADL_API adl_status adl_instance_dims(const adl_instance* inst, size_t* n, size_t* p);
/* 1 when the generating truth is attached, else 0. */
ADL_API int adl_instance_has_truth(const adl_instance* inst);
ADL_API void adl_instance_free(adl_instance* inst);

/* Solves with a "solve" config (null means defaults). */
ADL_API adl_status adl_solve(const adl_instance* inst, const char* opts_json, adl_solution** out);
/* Full report: solution, λ policy, warnings and, with truth, theory,
 * certificate and claims. */
ADL_API adl_status adl_solution_json(const adl_solution* sol, char** out);
/* Copies min(len, p) coefficients; *p_out (if non-null) receives p. */
ADL_API adl_status adl_solution_coefficients(const adl_solution* sol, double* out, size_t len, size_t* p_out);
ADL_API double adl_solution_lambda(const adl_solution* sol);
ADL_API void adl_solution_free(adl_solution* sol);

/* Batch drivers. csv/manifest/report receive JSON or CSV text. */
ADL_API adl_status adl_sweep(const char* config_json, char** csv, char** manifest_json);
ADL_API adl_status adl_verify(const char* config_json, char** csv, char** summary_json);
ADL_API adl_status adl_f1(const char* config_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* ADLASSO_ADLASSO_H_ */
