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

#include "geogaze/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "geogaze/error.hpp"
#include "text_format.hpp"

namespace geogaze {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

AxisReport axis_report(std::span<const double> pred, std::span<const double> truth, Axis axis,
                       const ScreenGeometry& geom) {
  AxisReport r;
  std::vector<double> abs_err(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) abs_err[i] = std::abs(pred[i] - truth[i]);
  r.mean_abs_error_px = mean(abs_err);
  r.sem_px = standard_error(abs_err);
  r.mean_abs_error_cm = pixel_to_cm(r.mean_abs_error_px, axis, geom);
  r.sem_cm = pixel_to_cm(r.sem_px, axis, geom);
  r.mean_angular_error_deg = cm_to_deg(r.mean_abs_error_cm, geom);
  r.sem_deg = cm_to_deg(r.sem_cm, geom);
  try {
    r.r_squared = r_squared(pred, truth);
  } catch (const Error& e) {
    if (e.code() != Errc::kZeroVariance && e.code() != Errc::kLengthMismatch) throw;
    r.r_squared = kNaN;
  }
  return r;
}

}  // namespace

void check_screen_geometry(const ScreenGeometry& geom) {
  if (geom.width_px <= 0 || geom.height_px <= 0 || !positive_finite(geom.width_cm) ||
      !positive_finite(geom.height_cm) || !positive_finite(geom.view_distance_cm)) {
    throw Error(Errc::kInvalidArgument,
                "screen geometry needs positive pixel size, physical size and view distance");
  }
}

double stable_sum(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  double comp = 0.0;
  for (double v : sorted) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double mean(std::span<const double> values) {
  if (values.empty()) return kNaN;
  return stable_sum(values) / static_cast<double>(values.size());
}

double standard_error(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return kNaN;
  const double m = mean(values);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (values[i] - m) * (values[i] - m);
  const double var = stable_sum(sq) / static_cast<double>(n - 1);
  return std::sqrt(var) / std::sqrt(static_cast<double>(n));
}

double r_squared(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) {
    throw Error(Errc::kLengthMismatch, "prediction and truth series differ in length");
  }
  if (truth.size() < 2) throw Error(Errc::kLengthMismatch, "R^2 needs at least 2 values");
  const double m = mean(truth);
  std::vector<double> res(truth.size());
  std::vector<double> tot(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    res[i] = (pred[i] - truth[i]) * (pred[i] - truth[i]);
    tot[i] = (truth[i] - m) * (truth[i] - m);
  }
  const double ss_tot = stable_sum(tot);
  if (ss_tot == 0.0) throw Error(Errc::kZeroVariance, "truth series is constant");
  return 1.0 - stable_sum(res) / ss_tot;
}

double pixel_to_cm(double err_px, Axis axis, const ScreenGeometry& geom) {
  return axis == Axis::kX ? err_px * (geom.width_cm / geom.width_px)
                          : err_px * (geom.height_cm / geom.height_px);
}

double cm_to_deg(double err_cm, double view_distance_cm) {
  return std::atan(err_cm / view_distance_cm) * (180.0 / std::numbers::pi);
}

double cm_to_deg(double err_cm, const ScreenGeometry& geom) {
  return cm_to_deg(err_cm, geom.view_distance_cm);
}

EvaluationReport evaluate_predictions(std::span<const ScreenPoint> predictions,
                                      std::span<const ScreenPoint> truth,
                                      const ScreenGeometry& geom) {
  check_screen_geometry(geom);
  if (predictions.size() != truth.size()) {
    throw Error(Errc::kLengthMismatch, "prediction and truth series differ in length");
  }
  if (truth.empty()) throw Error(Errc::kEmptySession, "no labeled samples to evaluate");
  const std::size_t n = truth.size();
  std::vector<double> pu(n), pv(n), tu(n), tv(n), eucl(n);
  for (std::size_t i = 0; i < n; ++i) {
    pu[i] = predictions[i].u;
    pv[i] = predictions[i].v;
    tu[i] = truth[i].u;
    tv[i] = truth[i].v;
    eucl[i] = std::hypot(pu[i] - tu[i], pv[i] - tv[i]);
  }
  EvaluationReport report;
  report.x = axis_report(pu, tu, Axis::kX, geom);
  report.y = axis_report(pv, tv, Axis::kY, geom);
  report.sample_count = n;
  report.mean_euclidean_error_px = mean(eucl);
  report.sem_euclidean_error_px = standard_error(eucl);
  report.view_distance_cm = geom.view_distance_cm;
  return report;
}

EvaluationReport evaluate(const GazeModel& model, std::span<const LabeledFrame> session,
                          const ScreenGeometry& geom, DegeneratePolicy policy) {
  check_screen_geometry(geom);
  if (session.empty()) throw Error(Errc::kEmptySession, "session has no labeled frames");
  std::vector<ScreenPoint> pred;
  std::vector<ScreenPoint> truth;
  pred.reserve(session.size());
  truth.reserve(session.size());
  std::size_t skipped = 0;
  for (const LabeledFrame& f : session) {
    try {
      pred.push_back(predict(model, descriptor_vector(f.frame)));
      truth.push_back(f.target_px);
    } catch (const Error& e) {
      if (e.code() != Errc::kDegenerateGeometry || policy == DegeneratePolicy::kFailFast) throw;
      ++skipped;
    }
  }
  if (pred.empty()) {
    throw Error(Errc::kEmptySession, "every frame in the session was degenerate");
  }
  EvaluationReport report = evaluate_predictions(pred, truth, geom);
  report.skipped_count = skipped;
  return report;
}

EvaluationReport evaluate(const GazeModel& model, std::span<const CalibrationSample> session,
                          const ScreenGeometry& geom) {
  check_screen_geometry(geom);
  if (session.empty()) throw Error(Errc::kEmptySession, "session has no labeled samples");
  std::vector<ScreenPoint> pred;
  std::vector<ScreenPoint> truth;
  pred.reserve(session.size());
  truth.reserve(session.size());
  for (const CalibrationSample& s : session) {
    pred.push_back(predict(model, s.descriptor));
    truth.push_back(s.target_px);
  }
  return evaluate_predictions(pred, truth, geom);
}

namespace {

constexpr const char* kAxisFields[] = {"r_squared",  "mae_px", "sem_px", "mae_cm",
                                       "sem_cm",     "mae_deg", "sem_deg"};

std::array<double, 7> axis_values(const AxisReport& a) {
  return {a.r_squared,         a.mean_abs_error_px, a.sem_px, a.mean_abs_error_cm,
          a.sem_cm,            a.mean_angular_error_deg, a.sem_deg};
}

}  // namespace

std::string format_report(const EvaluationReport& report) {
  std::string out = "# geogaze evaluation report\n";
  out += "format_version = 1\n";
  out += "sample_count = " + std::to_string(report.sample_count) + "\n";
  out += "skipped_count = " + std::to_string(report.skipped_count) + "\n";
  out += "view_distance_cm = " + detail::format_double(report.view_distance_cm) + "\n";
  for (const auto& [prefix, axis] : {std::pair{"x", &report.x}, std::pair{"y", &report.y}}) {
    const auto values = axis_values(*axis);
    for (std::size_t i = 0; i < values.size(); ++i) {
      out += std::string(prefix) + "." + kAxisFields[i] + " = " +
             detail::format_double(values[i]) + "\n";
    }
  }
  out += "euclidean.mae_px = " + detail::format_double(report.mean_euclidean_error_px) + "\n";
  out += "euclidean.sem_px = " + detail::format_double(report.sem_euclidean_error_px) + "\n";
  return out;
}

std::string report_csv_header() {
  std::string out = "sample_count,skipped_count,view_distance_cm";
  for (const char* prefix : {"x", "y"}) {
    for (const char* f : kAxisFields) out += std::string(",") + prefix + "_" + f;
  }
  out += ",euclidean_mae_px,euclidean_sem_px";
  return out;
}

std::string report_csv_row(const EvaluationReport& report) {
  std::string out = std::to_string(report.sample_count) + "," +
                    std::to_string(report.skipped_count) + "," +
                    detail::format_double(report.view_distance_cm);
  for (const AxisReport* axis : {&report.x, &report.y}) {
    for (double v : axis_values(*axis)) out += "," + detail::format_double(v);
  }
  out += "," + detail::format_double(report.mean_euclidean_error_px);
  out += "," + detail::format_double(report.sem_euclidean_error_px);
  return out;
}

}  // namespace geogaze
