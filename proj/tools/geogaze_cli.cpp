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

// geogaze-cli: batch calibration, evaluation, prediction, synthetic session
// generation and descriptor export. Talks to the library only through the
// C API in geogaze/geogaze.h.
//
// Exit codes: 0 success, 1 usage error, 2 data/validation error,
// 3 numerical error.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geogaze/geogaze.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(gg_status status) {
  switch (status) {
    case GG_OK:
      return kExitOk;
    case GG_ERR_INVALID_ARGUMENT:
      return kExitUsage;
    case GG_ERR_DEGENERATE_GEOMETRY:
    case GG_ERR_TOO_FEW_SAMPLES:
    case GG_ERR_RANK_DEFICIENT:
    case GG_ERR_ZERO_VARIANCE:
    case GG_ERR_LENGTH_MISMATCH:
      return kExitNumerical;
    default:
      return kExitData;
  }
}

// Thrown to unwind to main with an exit code after the message is printed.
struct Exit {
  int code;
};

void check(gg_status status, const std::string& context) {
  if (status == GG_OK) return;
  std::fprintf(stderr, "error: %s: %s (%s)\n", context.c_str(), gg_last_error_message(),
               gg_status_name(status));
  throw Exit{exit_code_for(status)};
}

struct SessionDeleter {
  void operator()(gg_session* s) const { gg_session_free(s); }
};
struct ModelDeleter {
  void operator()(gg_model* m) const { gg_model_free(m); }
};
struct SynthConfigDeleter {
  void operator()(gg_synth_config* c) const { gg_synth_config_free(c); }
};
using SessionPtr = std::unique_ptr<gg_session, SessionDeleter>;
using ModelPtr = std::unique_ptr<gg_model, ModelDeleter>;
using SynthConfigPtr = std::unique_ptr<gg_synth_config, SynthConfigDeleter>;

SessionPtr read_session(const std::string& path) {
  gg_session* s = nullptr;
  check(gg_session_read(path.c_str(), &s), "reading session " + path);
  return SessionPtr(s);
}

ModelPtr load_model(const std::string& path) {
  gg_model* m = nullptr;
  check(gg_model_load(path.c_str(), &m), "loading model " + path);
  return ModelPtr(m);
}

void print_axis(const char* name, const gg_axis_report& a) {
  std::printf("%s: R^2 = %.6f  MAE = %.3f +/- %.3f px  = %.4f +/- %.4f cm  = %.4f +/- %.4f deg\n",
              name, a.r_squared, a.mean_abs_error_px, a.sem_px, a.mean_abs_error_cm, a.sem_cm,
              a.mean_angular_error_deg, a.sem_deg);
}

struct CalibrateArgs {
  std::vector<std::string> sessions;
  std::string out;
};

int run_calibrate(const CalibrateArgs& args) {
  std::vector<SessionPtr> owned;
  std::vector<const gg_session*> sessions;
  for (const std::string& path : args.sessions) {
    owned.push_back(read_session(path));
    sessions.push_back(owned.back().get());
  }
  gg_model* raw = nullptr;
  std::size_t degenerate = 0;
  check(gg_model_fit(sessions.data(), sessions.size(), &raw, &degenerate), "calibration");
  ModelPtr model(raw);
  check(gg_model_save(model.get(), args.out.c_str()), "writing model " + args.out);

  gg_fit_info info{};
  check(gg_model_fit_info(model.get(), &info), "reading fit info");
  std::printf("samples: %zu (degenerate frames skipped: %zu)\n", info.sample_count, degenerate);
  std::printf("x: training residual RMS = %.6g px, condition = %.6g\n", info.residual_rms_x,
              info.condition_x);
  std::printf("y: training residual RMS = %.6g px, condition = %.6g\n", info.residual_rms_y,
              info.condition_y);
  std::printf("model written to %s\n", args.out.c_str());
  return kExitOk;
}

struct EvalArgs {
  std::string model;
  std::string session;
  double view_distance_cm = 0.0;
  std::string report;
  std::string csv;
  bool fail_fast = false;
};

int run_eval(const EvalArgs& args) {
  ModelPtr model = load_model(args.model);
  SessionPtr session = read_session(args.session);
  gg_report report{};
  check(gg_evaluate(model.get(), session.get(), args.view_distance_cm,
                    args.fail_fast ? GG_FAIL_FAST : GG_SKIP_AND_COUNT, &report),
        "evaluating " + args.session);
  std::printf("samples: %zu (degenerate frames skipped: %zu)\n", report.sample_count,
              report.skipped_count);
  std::printf("view distance: %.4g cm\n", report.view_distance_cm);
  print_axis("x", report.x);
  print_axis("y", report.y);
  std::printf("2D: mean error = %.3f +/- %.3f px\n", report.mean_euclidean_error_px,
              report.sem_euclidean_error_px);
  if (!args.report.empty()) {
    check(gg_report_write(&report, args.report.c_str()), "writing report " + args.report);
  }
  if (!args.csv.empty()) {
    check(gg_report_write_csv(&report, args.csv.c_str()), "writing report CSV " + args.csv);
  }
  return kExitOk;
}

struct PredictArgs {
  std::string model;
  std::string session;
  std::string out;
};

int run_predict(const PredictArgs& args) {
  ModelPtr model = load_model(args.model);
  SessionPtr session = read_session(args.session);
  std::size_t rows = 0;
  std::size_t skipped = 0;
  check(gg_predict_csv(model.get(), session.get(), args.out.c_str(), &rows, &skipped),
        "writing predictions " + args.out);
  std::printf("%zu predictions written to %s (degenerate frames skipped: %zu)\n", rows,
              args.out.c_str(), skipped);
  return kExitOk;
}

struct SynthArgs {
  std::string config;
  std::string out_dir;
  std::optional<int> sessions;
  std::optional<int> frames;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise_sigma;
};

int run_synth(const SynthArgs& args) {
  SynthConfigPtr cfg;
  if (!args.config.empty()) {
    gg_synth_config* raw = nullptr;
    check(gg_synth_config_load(args.config.c_str(), &raw), "loading config " + args.config);
    cfg.reset(raw);
  } else {
    cfg.reset(gg_synth_config_create());
  }
  if (args.sessions) gg_synth_config_set_sessions(cfg.get(), *args.sessions);
  if (args.frames) gg_synth_config_set_frames(cfg.get(), *args.frames);
  if (args.seed) gg_synth_config_set_seed(cfg.get(), *args.seed);
  if (args.noise_sigma) gg_synth_config_set_noise(cfg.get(), *args.noise_sigma);
  std::size_t files = 0;
  check(gg_synth_write_sessions(cfg.get(), args.out_dir.c_str(), &files),
        "writing synthetic sessions");
  std::printf("%zu session files written to %s\n", files, args.out_dir.c_str());
  return kExitOk;
}

struct ExportArgs {
  std::string session;
  std::string out;
};

int run_export(const ExportArgs& args) {
  std::size_t rows = 0;
  std::size_t skipped = 0;
  check(gg_export_descriptors(args.session.c_str(), args.out.c_str(), &rows, &skipped),
        "exporting descriptors");
  std::printf("%zu descriptor rows written to %s (degenerate frames skipped: %zu)\n", rows,
              args.out.c_str(), skipped);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry-based gaze estimation from facial landmarks"};
  app.require_subcommand(1);

  CalibrateArgs calibrate;
  auto* cmd_calibrate = app.add_subcommand("calibrate", "Fit a gaze model to labeled sessions");
  cmd_calibrate->add_option("--sessions", calibrate.sessions, "Session files")->required();
  cmd_calibrate->add_option("--out", calibrate.out, "Model file to write")->required();

  EvalArgs eval;
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate a model on a labeled session");
  cmd_eval->add_option("--model", eval.model, "Model file")->required();
  cmd_eval->add_option("--session", eval.session, "Held-out session file")->required();
  cmd_eval->add_option("--view-distance-cm", eval.view_distance_cm, "Eye-to-screen distance")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_eval->add_option("--report", eval.report, "Write the report as key-value text");
  cmd_eval->add_option("--csv", eval.csv, "Write the report as a CSV row");
  cmd_eval->add_flag("--fail-fast", eval.fail_fast, "Fail on the first degenerate frame");

  PredictArgs predict;
  auto* cmd_predict = app.add_subcommand("predict", "Write per-frame predictions as CSV");
  cmd_predict->add_option("--model", predict.model, "Model file")->required();
  cmd_predict->add_option("--session", predict.session, "Session file")->required();
  cmd_predict->add_option("--out", predict.out, "CSV file to write")->required();

  SynthArgs synth;
  auto* cmd_synth = app.add_subcommand("synth", "Generate synthetic labeled sessions");
  cmd_synth->add_option("--config", synth.config, "JSON config file")->check(CLI::ExistingFile);
  cmd_synth->add_option("--out-dir", synth.out_dir, "Output directory")->required();
  cmd_synth->add_option("--sessions", synth.sessions, "Number of sessions");
  cmd_synth->add_option("--frames", synth.frames, "Frames per session");
  cmd_synth->add_option("--seed", synth.seed, "RNG seed");
  cmd_synth->add_option("--noise-sigma", synth.noise_sigma, "Landmark noise (normalized units)");

  ExportArgs exp;
  auto* cmd_export =
      app.add_subcommand("export-descriptors", "Export per-frame descriptors as CSV");
  cmd_export->add_option("--session", exp.session, "Session file")->required();
  cmd_export->add_option("--out", exp.out, "CSV file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cmd_calibrate) return run_calibrate(calibrate);
    if (*cmd_eval) return run_eval(eval);
    if (*cmd_predict) return run_predict(predict);
    if (*cmd_synth) return run_synth(synth);
    if (*cmd_export) return run_export(exp);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitUsage;
}
