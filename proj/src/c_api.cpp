// Copyright 2026 The geogaze Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geogaze/geogaze.h"

#include <cstring>
#include <exception>
#include <cmath>
#include <memory>
#include <fstream>
#include <string>
#include <vector>

#include "geogaze/descriptors.hpp"
#include "geogaze/error.hpp"
#include "geogaze/metrics.hpp"
#include "geogaze/regression.hpp"
#include "geogaze/session_io.hpp"
#include "geogaze/synth.hpp"
#include "text_format.hpp"

struct gg_session {
  geogaze::Session value;
};

struct gg_model {
  geogaze::GazeModel value;
};

struct gg_synth_config {
  geogaze::SynthConfig value;
};

namespace {

struct LastError {
  std::string message;
  std::size_t line = 0;
  gg_status cause = GG_OK;
};

thread_local LastError last_error;

gg_status to_status(geogaze::Errc code) { return static_cast<gg_status>(code); }

gg_status fail(gg_status status, std::string message, std::size_t line = 0,
               gg_status cause = GG_OK) {
  last_error = {std::move(message), line, cause};
  return status;
}

// Runs body and converts any exception into a status.
template <typename F>
gg_status guarded(F&& body) noexcept {
  try {
    last_error = {};
    body();
    return GG_OK;
  } catch (const geogaze::Error& e) {
    return fail(to_status(e.code()), e.what(), e.line().value_or(0),
                e.cause() ? to_status(*e.cause()) : GG_OK);
  } catch (const std::bad_alloc&) {
    return fail(GG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GG_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw geogaze::Error(geogaze::Errc::kInvalidArgument, what);
}

gg_descriptor to_c(const geogaze::DescriptorVector& d) {
  return {d.r_y, d.r_x, d.w_f, d.h_f, d.me_x, d.me_y, d.pp_x, d.pp_y};
}

geogaze::DescriptorVector from_c(const gg_descriptor& d) {
  return {d.r_y, d.r_x, d.w_f, d.h_f, d.me_x, d.me_y, d.pp_x, d.pp_y};
}

gg_axis_report to_c(const geogaze::AxisReport& a) {
  return {a.r_squared, a.mean_abs_error_px, a.sem_px, a.mean_abs_error_cm,
          a.sem_cm,    a.mean_angular_error_deg, a.sem_deg};
}

geogaze::AxisReport from_c(const gg_axis_report& a) {
  return {a.r_squared, a.mean_abs_error_px, a.sem_px, a.mean_abs_error_cm,
          a.sem_cm,    a.mean_angular_error_deg, a.sem_deg};
}

geogaze::EvaluationReport from_c(const gg_report& r) {
  geogaze::EvaluationReport out;
  out.x = from_c(r.x);
  out.y = from_c(r.y);
  out.sample_count = r.sample_count;
  out.skipped_count = r.skipped_count;
  out.mean_euclidean_error_px = r.mean_euclidean_error_px;
  out.sem_euclidean_error_px = r.sem_euclidean_error_px;
  out.view_distance_cm = r.view_distance_cm;
  return out;
}

const geogaze::SessionRecord& record_at(const gg_session* s, size_t index) {
  require(s != nullptr, "session is null");
  if (index >= s->value.records.size()) {
    throw geogaze::Error(geogaze::Errc::kInvalidArgument, "frame index out of range");
  }
  return s->value.records[index];
}

void write_text(const char* path, const std::string& text) {
  require(path != nullptr, "path is null");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw geogaze::Error(geogaze::Errc::kIoFailure, std::string("cannot open ") + path);
  out << text;
  out.flush();
  if (!out) throw geogaze::Error(geogaze::Errc::kIoFailure, std::string("failed writing ") + path);
}

}  // namespace

extern "C" {

const char* gg_status_name(gg_status status) {
  if (status == GG_OK) return "Ok";
  if (status == GG_ERR_INTERNAL) return "Internal";
  if (status < GG_ERR_INVALID_ARGUMENT || status > GG_ERR_MISSING_TARGET) return "Unknown";
  // to_string returns views of string literals, so data() is NUL-terminated.
  return geogaze::to_string(static_cast<geogaze::Errc>(status)).data();
}

const char* gg_last_error_message(void) { return last_error.message.c_str(); }
size_t gg_last_error_line(void) { return last_error.line; }
gg_status gg_last_error_cause(void) { return last_error.cause; }

gg_status gg_descriptor_compute(const double* xyz, size_t point_count, gg_descriptor* out) {
  return guarded([&] {
    require(xyz != nullptr && out != nullptr, "null argument");
    std::vector<geogaze::Landmark3> pts(point_count);
    for (size_t i = 0; i < point_count; ++i) pts[i] = {xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]};
    *out = to_c(geogaze::descriptor_vector(geogaze::validate_frame(pts)));
  });
}

gg_status gg_session_read(const char* path, gg_session** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    auto s = std::make_unique<gg_session>();
    s->value = geogaze::read_session(path);
    *out = s.release();
  });
}

void gg_session_free(gg_session* session) { delete session; }

gg_status gg_session_write(const gg_session* session, const char* path) {
  return guarded([&] {
    require(session != nullptr && path != nullptr, "null argument");
    geogaze::write_session(session->value.header, session->value.records, path);
  });
}

size_t gg_session_frame_count(const gg_session* session) {
  return session ? session->value.records.size() : 0;
}

size_t gg_session_labeled_count(const gg_session* session) {
  if (!session) return 0;
  size_t n = 0;
  for (const auto& r : session->value.records) n += r.target_px ? 1 : 0;
  return n;
}

gg_status gg_session_screen(const gg_session* session, gg_screen* out) {
  return guarded([&] {
    require(session != nullptr && out != nullptr, "null argument");
    const auto& g = session->value.header.screen;
    *out = {g.width_px, g.height_px, g.width_cm, g.height_cm, g.view_distance_cm};
  });
}

const char* gg_session_id(const gg_session* session) {
  return session ? session->value.header.session_id.c_str() : "";
}

const char* gg_session_subject_id(const gg_session* session) {
  return session ? session->value.header.subject_id.c_str() : "";
}

const char* gg_session_source(const gg_session* session) {
  return session ? session->value.header.source.c_str() : "";
}

gg_status gg_session_frame_timestamp(const gg_session* session, size_t index, int64_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = record_at(session, index).frame.timestamp_ms();
  });
}

gg_status gg_session_frame_landmarks(const gg_session* session, size_t index, double* out_xyz) {
  return guarded([&] {
    require(out_xyz != nullptr, "null argument");
    const auto& frame = record_at(session, index).frame;
    for (size_t i = 0; i < geogaze::FrameLandmarks::kPointCount; ++i) {
      out_xyz[3 * i] = frame[i].x;
      out_xyz[3 * i + 1] = frame[i].y;
      out_xyz[3 * i + 2] = frame[i].z;
    }
  });
}

gg_status gg_session_frame_target(const gg_session* session, size_t index, int* has_target,
                                  double* u, double* v) {
  return guarded([&] {
    require(has_target != nullptr && u != nullptr && v != nullptr, "null argument");
    const auto& rec = record_at(session, index);
    *has_target = rec.target_px ? 1 : 0;
    if (rec.target_px) {
      *u = rec.target_px->u;
      *v = rec.target_px->v;
    }
  });
}

gg_status gg_export_descriptors(const char* session_path, const char* csv_path, size_t* rows,
                                size_t* skipped) {
  return guarded([&] {
    require(session_path != nullptr && csv_path != nullptr, "null argument");
    const auto stats = geogaze::export_descriptors(session_path, csv_path);
    if (rows) *rows = stats.rows;
    if (skipped) *skipped = stats.skipped;
  });
}

gg_status gg_model_fit(const gg_session* const* sessions, size_t session_count, gg_model** out,
                       size_t* degenerate) {
  return guarded([&] {
    require(out != nullptr && (sessions != nullptr || session_count == 0), "null argument");
    *out = nullptr;
    std::vector<geogaze::CalibrationSample> pooled;
    size_t skipped = 0;
    for (size_t i = 0; i < session_count; ++i) {
      require(sessions[i] != nullptr, "session is null");
      auto extracted = geogaze::calibration_samples(sessions[i]->value);
      skipped += extracted.degenerate;
      pooled.insert(pooled.end(), std::make_move_iterator(extracted.samples.begin()),
                    std::make_move_iterator(extracted.samples.end()));
    }
    if (degenerate) *degenerate = skipped;
    auto m = std::make_unique<gg_model>();
    m->value = geogaze::fit(pooled);
    *out = m.release();
  });
}

gg_status gg_model_fit_descriptors(const gg_descriptor* descriptors, const double* targets,
                                   size_t count, gg_model** out) {
  return guarded([&] {
    require(out != nullptr && (count == 0 || (descriptors != nullptr && targets != nullptr)),
            "null argument");
    *out = nullptr;
    std::vector<geogaze::CalibrationSample> samples(count);
    for (size_t i = 0; i < count; ++i) {
      samples[i].descriptor = from_c(descriptors[i]);
      samples[i].target_px = {targets[2 * i], targets[2 * i + 1]};
    }
    auto m = std::make_unique<gg_model>();
    m->value = geogaze::fit(samples);
    *out = m.release();
  });
}

gg_status gg_model_create(const double* beta_x, const double* beta_y, const gg_fit_info* info,
                          gg_model** out) {
  return guarded([&] {
    require(beta_x != nullptr && beta_y != nullptr && info != nullptr && out != nullptr,
            "null argument");
    *out = nullptr;
    auto m = std::make_unique<gg_model>();
    for (size_t i = 0; i < geogaze::kRegressorCount; ++i) {
      require(std::isfinite(beta_x[i]) && std::isfinite(beta_y[i]), "coefficients must be finite");
      m->value.beta_x[i] = beta_x[i];
      m->value.beta_y[i] = beta_y[i];
    }
    require(info->sample_count >= geogaze::kRegressorCount, "sample_count must be at least 5");
    require(info->format_version == geogaze::kModelFormatVersion, "unsupported format_version");
    m->value.fit_info = {info->sample_count,  info->residual_rms_x, info->residual_rms_y,
                         info->condition_x,   info->condition_y,    info->format_version};
    *out = m.release();
  });
}

gg_status gg_model_load(const char* path, gg_model** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    auto m = std::make_unique<gg_model>();
    m->value = geogaze::load_model(path);
    *out = m.release();
  });
}

gg_status gg_model_parse(const char* text, gg_model** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    auto m = std::make_unique<gg_model>();
    m->value = geogaze::deserialize_model(text);
    *out = m.release();
  });
}

gg_status gg_model_save(const gg_model* model, const char* path) {
  return guarded([&] {
    require(model != nullptr && path != nullptr, "null argument");
    geogaze::save_model(model->value, path);
  });
}

void gg_model_free(gg_model* model) { delete model; }

gg_status gg_model_coefficients(const gg_model* model, double* beta_x, double* beta_y) {
  return guarded([&] {
    require(model != nullptr && beta_x != nullptr && beta_y != nullptr, "null argument");
    std::memcpy(beta_x, model->value.beta_x.data(), sizeof(double) * geogaze::kRegressorCount);
    std::memcpy(beta_y, model->value.beta_y.data(), sizeof(double) * geogaze::kRegressorCount);
  });
}

gg_status gg_model_fit_info(const gg_model* model, gg_fit_info* out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "null argument");
    const auto& f = model->value.fit_info;
    *out = {f.sample_count, f.residual_rms_x, f.residual_rms_y,
            f.condition_x,  f.condition_y,    f.format_version};
  });
}

gg_status gg_model_predict(const gg_model* model, const gg_descriptor* d, double* u, double* v) {
  return guarded([&] {
    require(model != nullptr && d != nullptr && u != nullptr && v != nullptr, "null argument");
    const auto p = geogaze::predict(model->value, from_c(*d));
    *u = p.u;
    *v = p.v;
  });
}

gg_status gg_predict_csv(const gg_model* model, const gg_session* session, const char* csv_path,
                         size_t* rows, size_t* skipped) {
  return guarded([&] {
    require(model != nullptr && session != nullptr && csv_path != nullptr, "null argument");
    std::string text = "timestamp_ms,u_pred,v_pred,u_true,v_true\n";
    size_t n = 0;
    size_t bad = 0;
    for (const auto& rec : session->value.records) {
      geogaze::DescriptorVector d;
      try {
        d = geogaze::descriptor_vector(rec.frame);
      } catch (const geogaze::Error& e) {
        if (e.code() != geogaze::Errc::kDegenerateGeometry) throw;
        ++bad;
        continue;
      }
      const auto p = geogaze::predict(model->value, d);
      text += std::to_string(rec.frame.timestamp_ms());
      text += ',';
      geogaze::detail::append_double(text, p.u);
      text += ',';
      geogaze::detail::append_double(text, p.v);
      text += ',';
      if (rec.target_px) {
        geogaze::detail::append_double(text, rec.target_px->u);
        text += ',';
        geogaze::detail::append_double(text, rec.target_px->v);
      } else {
        text += ',';
      }
      text += '\n';
      ++n;
    }
    write_text(csv_path, text);
    if (rows) *rows = n;
    if (skipped) *skipped = bad;
  });
}

gg_status gg_evaluate(const gg_model* model, const gg_session* session, double view_distance_cm,
                      gg_degenerate_policy policy, gg_report* out) {
  return guarded([&] {
    require(model != nullptr && session != nullptr && out != nullptr, "null argument");
    const auto frames = geogaze::labeled_frames(session->value);
    if (frames.empty()) {
      throw geogaze::Error(geogaze::Errc::kMissingTarget,
                           "session " + session->value.header.session_id +
                               " has no labeled frames");
    }
    geogaze::ScreenGeometry geom = session->value.header.screen;
    geom.view_distance_cm = view_distance_cm;
    const auto r = geogaze::evaluate(model->value, frames, geom,
                                     policy == GG_FAIL_FAST
                                         ? geogaze::DegeneratePolicy::kFailFast
                                         : geogaze::DegeneratePolicy::kSkipAndCount);
    *out = {to_c(r.x),
            to_c(r.y),
            r.sample_count,
            r.skipped_count,
            r.mean_euclidean_error_px,
            r.sem_euclidean_error_px,
            r.view_distance_cm};
  });
}

gg_status gg_report_write(const gg_report* report, const char* path) {
  return guarded([&] {
    require(report != nullptr, "null argument");
    write_text(path, geogaze::format_report(from_c(*report)));
  });
}

gg_status gg_report_write_csv(const gg_report* report, const char* path) {
  return guarded([&] {
    require(report != nullptr, "null argument");
    write_text(path, geogaze::report_csv_header() + "\n" +
                         geogaze::report_csv_row(from_c(*report)) + "\n");
  });
}

double gg_cm_to_deg(double err_cm, double view_distance_cm) {
  return geogaze::cm_to_deg(err_cm, view_distance_cm);
}

gg_synth_config* gg_synth_config_create(void) {
  try {
    return new gg_synth_config{};
  } catch (...) {
    return nullptr;
  }
}

gg_status gg_synth_config_load(const char* path, gg_synth_config** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    auto c = std::make_unique<gg_synth_config>();
    c->value = geogaze::load_synth_config(path);
    *out = c.release();
  });
}

void gg_synth_config_free(gg_synth_config* cfg) { delete cfg; }

void gg_synth_config_set_seed(gg_synth_config* cfg, uint64_t seed) {
  if (cfg) cfg->value.seed = seed;
}

void gg_synth_config_set_sessions(gg_synth_config* cfg, int32_t sessions) {
  if (cfg) cfg->value.sessions = sessions;
}

void gg_synth_config_set_frames(gg_synth_config* cfg, int32_t frames_per_session) {
  if (cfg) cfg->value.frames_per_session = frames_per_session;
}

void gg_synth_config_set_noise(gg_synth_config* cfg, double noise_sigma) {
  if (cfg) cfg->value.noise_sigma = noise_sigma;
}

gg_status gg_synth_write_sessions(const gg_synth_config* cfg, const char* out_dir,
                                  size_t* files_written) {
  return guarded([&] {
    require(cfg != nullptr && out_dir != nullptr, "null argument");
    const auto paths = geogaze::write_synthetic_sessions(cfg->value, out_dir);
    if (files_written) *files_written = paths.size();
  });
}

}  // extern "C"
