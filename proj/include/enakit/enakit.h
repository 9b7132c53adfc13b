// Copyright 2026 The enakit Authors
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

#ifndef ENAKIT_ENAKIT_H_
#define ENAKIT_ENAKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ENAKIT_BUILDING_LIBRARY)
#define ENAKIT_API __declspec(dllexport)
#else
#define ENAKIT_API __declspec(dllimport)
#endif
#else
#define ENAKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one; on failure the message is
 * available from enakit_last_error() on the calling thread. */
typedef enum enakit_status {
  ENAKIT_OK = 0,
  ENAKIT_ERR_INVALID_ARGUMENT = 1,
  ENAKIT_ERR_SCHEMA = 2,
  ENAKIT_ERR_VALUE = 3,
  ENAKIT_ERR_EMPTY_INPUT = 4,
  ENAKIT_ERR_SEGMENTATION = 5,
  ENAKIT_ERR_CONFIGURATION = 6,
  ENAKIT_ERR_PARAMETER = 7,
  ENAKIT_ERR_DEGENERATE = 8,
  ENAKIT_ERR_IO = 9,
  ENAKIT_ERR_INTERNAL = 100
} enakit_status;

ENAKIT_API const char* enakit_version(void);
ENAKIT_API const char* enakit_status_name(enakit_status status);
/* Message of the last failed call on this thread; "" if none. */
ENAKIT_API const char* enakit_last_error(void);

/* Strings and buffers returned through out-parameters are owned by the
 * caller and released with these. */
ENAKIT_API void enakit_string_free(char* str);
ENAKIT_API void enakit_buffer_free(double* buffer);

typedef void (*enakit_log_fn)(const char* message, void* user_data);
/* Receives progress and warning lines from enakit_run. NULL disables. */
ENAKIT_API void enakit_set_log_callback(enakit_log_fn fn, void* user_data);

/* ---- corpus ------------------------------------------------------------ */

typedef struct enakit_corpus enakit_corpus;

/* schema_json may be NULL for the canonical column names. */
ENAKIT_API enakit_status enakit_corpus_parse(const char* csv_text, const char* codebook_json,
                                             const char* schema_json, enakit_corpus** out);
/* strategy: "explicit-column" or "whole-conversation". */
ENAKIT_API enakit_status enakit_corpus_segment(enakit_corpus* corpus, const char* strategy);
ENAKIT_API enakit_status enakit_corpus_apply_classifier(enakit_corpus* corpus, const char* classifier_json);
ENAKIT_API enakit_status enakit_corpus_record_count(const enakit_corpus* corpus, size_t* out);
ENAKIT_API enakit_status enakit_corpus_code_count(const enakit_corpus* corpus, size_t* out);
ENAKIT_API enakit_status enakit_corpus_to_json(const enakit_corpus* corpus, char** out);
/* mode: "stanza-union" or "per-line". */
ENAKIT_API enakit_status enakit_corpus_cumulative_json(const enakit_corpus* corpus, const char* mode, char** out);
ENAKIT_API void enakit_corpus_free(enakit_corpus* corpus);

/* ---- model ------------------------------------------------------------- */

typedef struct enakit_model enakit_model;

ENAKIT_API enakit_status enakit_model_fit(const enakit_corpus* corpus, const char* mode, size_t dims, int center,
                                          enakit_model** out);
ENAKIT_API enakit_status enakit_model_unit_count(const enakit_model* model, size_t* out);
ENAKIT_API enakit_status enakit_model_dims(const enakit_model* model, size_t* out);
/* coords must hold enakit_model_dims() values. */
ENAKIT_API enakit_status enakit_model_score(const enakit_model* model, size_t unit, double* coords);
ENAKIT_API enakit_status enakit_model_variance_explained(const enakit_model* model, size_t dim, double* out);
ENAKIT_API enakit_status enakit_model_node_position(const enakit_model* model, size_t code, double* coords);
ENAKIT_API enakit_status enakit_model_to_json(const enakit_model* model, char** out);
ENAKIT_API void enakit_model_free(enakit_model* model);

/* ---- reliability ------------------------------------------------------- */

/* counts is row-major [rater1][rater2] over {0,1}. */
ENAKIT_API enakit_status enakit_cohen_kappa(const int64_t counts[4], double* kappa, double* agreement);
ENAKIT_API enakit_status enakit_shaffer_rho(double observed_kappa, uint32_t handset_size, double baserate,
                                            double threshold_kappa, uint32_t replicates, uint64_t seed,
                                            double* out);

/* ---- statistics -------------------------------------------------------- */

ENAKIT_API enakit_status enakit_welch_t(const double* a, size_t na, const double* b, size_t nb, double* t,
                                        double* df, double* p_two_sided);
ENAKIT_API enakit_status enakit_cohens_d(const double* a, size_t na, const double* b, size_t nb, double* out);
ENAKIT_API enakit_status enakit_mean_ci(const double* sample, size_t n, double level, double* lower,
                                        double* upper);

/* ---- features ---------------------------------------------------------- */

typedef struct enakit_mfcc_config {
  size_t frame_length;
  size_t hop;
  size_t fft_size;
  size_t mel_filters;
  size_t coefficients;
  double log_floor;
} enakit_mfcc_config;

ENAKIT_API enakit_status enakit_mfcc_default_config(double sample_rate, enakit_mfcc_config* out);
/* *out is frames x coefficients, row-major; free with enakit_buffer_free. */
ENAKIT_API enakit_status enakit_mfcc(const double* samples, size_t n, double sample_rate,
                                     const enakit_mfcc_config* config, double** out, size_t* frames,
                                     size_t* coefficients);

/* Poses are frames x joints x 3, row-major. */
ENAKIT_API enakit_status enakit_pose_standardize(const double* coords, size_t frames, size_t joints,
                                                 size_t target_len, double** out);
/* axis: 'x', 'y' or 'z'. */
ENAKIT_API enakit_status enakit_pose_rotate(const double* coords, size_t frames, size_t joints, double degrees,
                                            char axis, size_t root_joint, double** out);

/* ---- pipeline ---------------------------------------------------------- */

/* command: a stage name (ingest, code, irr, model, compare, plot, mfcc,
 * pose) or "run". config_path and overrides_json may be NULL. */
ENAKIT_API enakit_status enakit_run(const char* command, const char* config_path, const char* overrides_json);

#ifdef __cplusplus
}
#endif

#endif /* ENAKIT_ENAKIT_H_ */
