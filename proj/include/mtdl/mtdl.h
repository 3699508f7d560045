/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * mtdl: non-stationary Markov tapped-delay-line channel toolkit
 * Copyright (C) 2026 The mtdl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libmtdl.
 * Objects are opaque handles created by a create, load or preset call
 * and released with the matching destroy call. Every function returns an
 * and released with the matching *_destroy. Every function returns an
 * mtdl_status; on failure mtdl_last_error() gives a message for the calling
 * thread, valid until the next failing call on that thread.
 *
 * Functions that return text use a size protocol: pass the buffer and its
 * capacity in *len. If the buffer is NULL or too small the call fails with
 * MTDL_ERROR_BUFFER_TOO_SMALL and *len holds the required size (including the
 * terminating NUL).
 */

#ifndef MTDL_H_
#define MTDL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MTDL_BUILDING_LIBRARY)
#    define MTDL_API __declspec(dllexport)
#  else
#    define MTDL_API __declspec(dllimport)
#  endif
#else
#  define MTDL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mtdl_status
{
    MTDL_OK = 0,
    MTDL_ERROR_NULL_POINTER = -1,
    MTDL_ERROR_DOMAIN = -2,          /* argument outside an operation's domain */
    MTDL_ERROR_PARSE = -3,           /* malformed file or config */
    MTDL_ERROR_VALIDATION = -4,      /* parameter set violates an invariant */
    MTDL_ERROR_IO = -5,
    MTDL_ERROR_BUFFER_TOO_SMALL = -6,
    MTDL_ERROR_MISMATCH = -7,        /* manifest digest mismatch */
    MTDL_ERROR_INTERNAL = -99
} mtdl_status;

typedef enum mtdl_trace_format
{
    MTDL_FORMAT_BINARY = 0,
    MTDL_FORMAT_TEXT = 1
} mtdl_trace_format;

typedef struct mtdl_params_struct *mtdl_params_t;
typedef struct mtdl_config_struct *mtdl_config_t;
typedef struct mtdl_trace_struct *mtdl_trace_t;
typedef struct mtdl_model_struct *mtdl_model_t;
typedef struct mtdl_report_struct *mtdl_report_t;
typedef struct mtdl_manifest_struct *mtdl_manifest_t;

MTDL_API const char *mtdl_version(void);
MTDL_API const char *mtdl_last_error(void);
MTDL_API const char *mtdl_status_name(int status);

/* ---- model parameters ------------------------------------------------- */

MTDL_API int mtdl_params_preset_5gr(mtdl_params_t *out);
MTDL_API int mtdl_params_load(mtdl_params_t *out, const char *path);
MTDL_API int mtdl_params_save(mtdl_params_t params, const char *path);
/* MTDL_OK, or MTDL_ERROR_VALIDATION with the violations in mtdl_last_error(). */
MTDL_API int mtdl_params_validate(mtdl_params_t params);
MTDL_API int mtdl_params_num_taps(mtdl_params_t params, size_t *out);
/* Tap l (0-based): delay [s], mean power [dB], p00, p11, p1. Any out pointer may be NULL. */
MTDL_API int mtdl_params_tap(mtdl_params_t params, size_t l, double *delay_s, double *power_db,
                             double *p00, double *p11, double *p1);
MTDL_API int mtdl_params_destroy(mtdl_params_t params);

MTDL_API int mtdl_tap_count(double max_rms_ds_s, double resolution_s, int *out);
MTDL_API int mtdl_max_doppler(double speed_mps, double carrier_hz, double *out);

/* ---- run configuration ------------------------------------------------ */

MTDL_API int mtdl_config_load(mtdl_config_t *out, const char *path);
MTDL_API int mtdl_config_parse(mtdl_config_t *out, const char *text, size_t len);
MTDL_API int mtdl_config_set_seed(mtdl_config_t cfg, uint64_t seed);
MTDL_API int mtdl_config_seed(mtdl_config_t cfg, uint64_t *out);
MTDL_API int mtdl_config_to_json(mtdl_config_t cfg, char *buf, size_t *len);
MTDL_API int mtdl_config_destroy(mtdl_config_t cfg);

/* ---- channel traces --------------------------------------------------- */

MTDL_API int mtdl_generate(mtdl_config_t cfg, mtdl_trace_t *out);
/* Markov model with default modes (power-scaled amplitudes, Doppler redrawn per birth). */
MTDL_API int mtdl_generate_params(mtdl_params_t params, size_t n_snapshots, uint64_t seed, mtdl_trace_t *out);
MTDL_API int mtdl_trace_load(mtdl_trace_t *out, const char *path);
MTDL_API int mtdl_trace_save(mtdl_trace_t trace, const char *path, int format);
MTDL_API int mtdl_trace_dims(mtdl_trace_t trace, size_t *n_snapshots, size_t *n_taps);
MTDL_API int mtdl_trace_delays(mtdl_trace_t trace, double *out, size_t capacity);
/* Interleaved (re, im), row-major; capacity counts doubles (2 * n_snapshots * n_taps). */
MTDL_API int mtdl_trace_gains(mtdl_trace_t trace, double *out, size_t capacity);
/* Interleaved (re, im) input and output of n_samples complex samples each. */
MTDL_API int mtdl_trace_apply(mtdl_trace_t trace, const double *input, size_t n_samples, double sample_rate_hz,
                              double *output);
MTDL_API int mtdl_trace_destroy(mtdl_trace_t trace);

/* ---- estimation ------------------------------------------------------- */

/* Uses the trace's delay resolution. */
MTDL_API int mtdl_estimate(mtdl_trace_t trace, double threshold_db, double speed_mps, mtdl_model_t *out);
MTDL_API int mtdl_model_num_taps(mtdl_model_t model, size_t *out);
MTDL_API int mtdl_model_params(mtdl_model_t model, mtdl_params_t *out);
MTDL_API int mtdl_model_save(mtdl_model_t model, const char *path);
MTDL_API int mtdl_model_destroy(mtdl_model_t model);

/* ---- comparison ------------------------------------------------------- */

MTDL_API int mtdl_compare(const mtdl_trace_t *traces, const char *const *names, size_t n_traces, size_t bins,
                          size_t window, double threshold_db, mtdl_report_t *out);
MTDL_API int mtdl_report_json(mtdl_report_t report, char *buf, size_t *len);
MTDL_API int mtdl_report_save(mtdl_report_t report, const char *path);
MTDL_API int mtdl_report_ks(mtdl_report_t report, size_t a, size_t b, double *out);
MTDL_API int mtdl_report_num_traces(mtdl_report_t report, size_t *out);
/* Name (size protocol), RMS DS mean [s], variance [s^2] and window count of trace idx. */
MTDL_API int mtdl_report_trace_name(mtdl_report_t report, size_t idx, char *buf, size_t *len);
MTDL_API int mtdl_report_trace_stats(mtdl_report_t report, size_t idx, double *mean_s, double *var_s2,
                                     size_t *n_windows);
/* Per-tap occupancy of trace idx; capacity is the number of doubles available. */
MTDL_API int mtdl_report_occupancy(mtdl_report_t report, size_t idx, double *out, size_t capacity);
/* Writes trace idx's normalized RMS DS histogram as delimited text. */
MTDL_API int mtdl_report_write_pdf(mtdl_report_t report, size_t idx, const char *path);
MTDL_API int mtdl_report_destroy(mtdl_report_t report);

/* ---- run manifests ---------------------------------------------------- */

MTDL_API int mtdl_manifest_create(mtdl_manifest_t *out, const char *command, const char *config_json);
MTDL_API int mtdl_manifest_add_seed(mtdl_manifest_t m, uint64_t seed);
/* Hashes the file at call time. */
MTDL_API int mtdl_manifest_add_input(mtdl_manifest_t m, const char *path);
MTDL_API int mtdl_manifest_add_output(mtdl_manifest_t m, const char *path);
MTDL_API int mtdl_manifest_save(mtdl_manifest_t m, const char *path);
MTDL_API int mtdl_manifest_destroy(mtdl_manifest_t m);
/* MTDL_OK, or MTDL_ERROR_MISMATCH with details in mtdl_last_error(). The
 * success summary is also left in mtdl_last_error(). */
MTDL_API int mtdl_manifest_verify(const char *manifest_path);
MTDL_API int mtdl_manifest_path_for(const char *output_path, char *buf, size_t *len);
/* out receives 64 hex digits plus NUL. */
MTDL_API int mtdl_file_sha256(const char *path, char out[65]);

#ifdef __cplusplus
}
#endif

#endif /* MTDL_H_ */
