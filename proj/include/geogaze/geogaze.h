/*
 * Copyright 2026 The geogaze Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the geogaze library.
 *
 * Objects are opaque handles created by gg_*_create / gg_*_read / gg_*_load
 * and released with the matching gg_*_free. Every fallible call returns a
 * gg_status; on failure, gg_last_error_message() and gg_last_error_line()
 * describe the most recent error on the calling thread.
 */
#ifndef GEOGAZE_GEOGAZE_H_
#define GEOGAZE_GEOGAZE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GEOGAZE_BUILDING_LIBRARY)
#define GG_API __declspec(dllexport)
#else
#define GG_API __declspec(dllimport)
#endif
#else
#define GG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match geogaze::Errc. */
typedef enum gg_status {
  GG_OK = 0,
  GG_ERR_INVALID_ARGUMENT = 1,
  GG_ERR_WRONG_POINT_COUNT = 2,
  GG_ERR_NON_FINITE_COORDINATE = 3,
  GG_ERR_OUT_OF_RANGE_COORDINATE = 4,
  GG_ERR_DEGENERATE_GEOMETRY = 5,
  GG_ERR_TOO_FEW_SAMPLES = 6,
  GG_ERR_RANK_DEFICIENT = 7,
  GG_ERR_MALFORMED_MODEL_FILE = 8,
  GG_ERR_UNSUPPORTED_VERSION = 9,
  GG_ERR_LENGTH_MISMATCH = 10,
  GG_ERR_ZERO_VARIANCE = 11,
  GG_ERR_EMPTY_SESSION = 12,
  GG_ERR_TARGET_BEHIND_SCREEN_PLANE = 13,
  GG_ERR_POSE_OUT_OF_ENVELOPE = 14,
  GG_ERR_MISSING_HEADER = 15,
  GG_ERR_MALFORMED_RECORD = 16,
  GG_ERR_FRAME_VALIDATION = 17,
  GG_ERR_VERSION_MISMATCH = 18,
  GG_ERR_IO_FAILURE = 19,
  GG_ERR_MISSING_TARGET = 20,
  GG_ERR_INTERNAL = 99
} gg_status;

#define GG_LANDMARK_COUNT 478

typedef struct gg_session gg_session;
typedef struct gg_model gg_model;
typedef struct gg_synth_config gg_synth_config;

typedef struct gg_screen {
  int32_t width_px;
  int32_t height_px;
  double width_cm;
  double height_cm;
  double view_distance_cm; /* 0 when unknown */
} gg_screen;

/* Field order matches the descriptor CSV export. */
typedef struct gg_descriptor {
  double r_y;
  double r_x;
  double w_f;
  double h_f;
  double me_x;
  double me_y;
  double pp_x;
  double pp_y;
} gg_descriptor;

typedef struct gg_fit_info {
  size_t sample_count;
  double residual_rms_x;
  double residual_rms_y;
  double condition_x;
  double condition_y;
  int32_t format_version;
} gg_fit_info;

typedef struct gg_axis_report {
  double r_squared;
  double mean_abs_error_px;
  double sem_px;
  double mean_abs_error_cm;
  double sem_cm;
  double mean_angular_error_deg;
  double sem_deg;
} gg_axis_report;

typedef struct gg_report {
  gg_axis_report x;
  gg_axis_report y;
  size_t sample_count;
  size_t skipped_count;
  double mean_euclidean_error_px;
  double sem_euclidean_error_px;
  double view_distance_cm;
} gg_report;

typedef enum gg_degenerate_policy {
  GG_SKIP_AND_COUNT = 0,
  GG_FAIL_FAST = 1
} gg_degenerate_policy;

/* ---- errors ---- */
GG_API const char* gg_status_name(gg_status status);
GG_API const char* gg_last_error_message(void);
/* 1-based line of the last parse error, or 0. */
GG_API size_t gg_last_error_line(void);
/* For GG_ERR_FRAME_VALIDATION: the underlying validation status, else GG_OK. */
GG_API gg_status gg_last_error_cause(void);

/* ---- descriptors ---- */
/* xyz holds point_count interleaved (x, y, z) triples. */
GG_API gg_status gg_descriptor_compute(const double* xyz, size_t point_count,
                                       gg_descriptor* out);

/* ---- sessions ---- */
GG_API gg_status gg_session_read(const char* path, gg_session** out);
GG_API void gg_session_free(gg_session* session);
GG_API gg_status gg_session_write(const gg_session* session, const char* path);
GG_API size_t gg_session_frame_count(const gg_session* session);
GG_API size_t gg_session_labeled_count(const gg_session* session);
GG_API gg_status gg_session_screen(const gg_session* session, gg_screen* out);
GG_API const char* gg_session_id(const gg_session* session);
GG_API const char* gg_session_subject_id(const gg_session* session);
GG_API const char* gg_session_source(const gg_session* session);
GG_API gg_status gg_session_frame_timestamp(const gg_session* session, size_t index,
                                            int64_t* out);
/* out_xyz must hold 3 * GG_LANDMARK_COUNT doubles. */
GG_API gg_status gg_session_frame_landmarks(const gg_session* session, size_t index,
                                            double* out_xyz);
/* *has_target is set to 0 for unlabeled frames (u, v untouched). */
GG_API gg_status gg_session_frame_target(const gg_session* session, size_t index, int* has_target,
                                         double* u, double* v);
/* Descriptor CSV; *skipped receives the degenerate-frame count (may be NULL). */
GG_API gg_status gg_export_descriptors(const char* session_path, const char* csv_path,
                                       size_t* rows, size_t* skipped);

/* ---- models ---- */
/* Pools the labeled frames of every session. *degenerate (may be NULL)
 * receives the number of skipped degenerate frames. */
GG_API gg_status gg_model_fit(const gg_session* const* sessions, size_t session_count,
                              gg_model** out, size_t* degenerate);
/* descriptors[i] paired with targets[2i], targets[2i+1]. */
GG_API gg_status gg_model_fit_descriptors(const gg_descriptor* descriptors,
                                          const double* targets, size_t count, gg_model** out);
/* beta_x and beta_y hold 5 finite coefficients each; info is required
 * (sample_count >= 5, format_version 1). */
GG_API gg_status gg_model_create(const double* beta_x, const double* beta_y,
                                 const gg_fit_info* info, gg_model** out);
GG_API gg_status gg_model_load(const char* path, gg_model** out);
GG_API gg_status gg_model_parse(const char* text, gg_model** out);
GG_API gg_status gg_model_save(const gg_model* model, const char* path);
GG_API void gg_model_free(gg_model* model);
GG_API gg_status gg_model_coefficients(const gg_model* model, double* beta_x, double* beta_y);
GG_API gg_status gg_model_fit_info(const gg_model* model, gg_fit_info* out);
GG_API gg_status gg_model_predict(const gg_model* model, const gg_descriptor* d, double* u,
                                  double* v);
/* CSV: timestamp_ms,u_pred,v_pred,u_true,v_true (truth columns empty when
 * unlabeled). *skipped (may be NULL) counts degenerate frames. */
GG_API gg_status gg_predict_csv(const gg_model* model, const gg_session* session,
                                const char* csv_path, size_t* rows, size_t* skipped);

/* ---- evaluation ---- */
GG_API gg_status gg_evaluate(const gg_model* model, const gg_session* session,
                             double view_distance_cm, gg_degenerate_policy policy,
                             gg_report* out);
GG_API gg_status gg_report_write(const gg_report* report, const char* path);
GG_API gg_status gg_report_write_csv(const gg_report* report, const char* path);
GG_API double gg_cm_to_deg(double err_cm, double view_distance_cm);

/* ---- synthetic sessions ---- */
GG_API gg_synth_config* gg_synth_config_create(void);
GG_API gg_status gg_synth_config_load(const char* path, gg_synth_config** out);
GG_API void gg_synth_config_free(gg_synth_config* cfg);
GG_API void gg_synth_config_set_seed(gg_synth_config* cfg, uint64_t seed);
GG_API void gg_synth_config_set_sessions(gg_synth_config* cfg, int32_t sessions);
GG_API void gg_synth_config_set_frames(gg_synth_config* cfg, int32_t frames_per_session);
GG_API void gg_synth_config_set_noise(gg_synth_config* cfg, double noise_sigma);
/* Writes session_1.jsonl .. session_N.jsonl into out_dir. */
GG_API gg_status gg_synth_write_sessions(const gg_synth_config* cfg, const char* out_dir,
                                         size_t* files_written);

#ifdef __cplusplus
}
#endif

#endif /* GEOGAZE_GEOGAZE_H_ */
