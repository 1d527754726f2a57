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

#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "geogaze/landmarks.hpp"
#include "geogaze/regression.hpp"

namespace geogaze {

// Physical description of the display. view_distance_cm is the assumed
// eye-to-screen distance; 0 means "unknown" in session headers and must be
// supplied before evaluating.
struct ScreenGeometry {
  int width_px = 0;
  int height_px = 0;
  double width_cm = 0.0;
  double height_cm = 0.0;
  double view_distance_cm = 0.0;

  friend bool operator==(const ScreenGeometry&, const ScreenGeometry&) = default;
};

// Throws kInvalidArgument unless every field is positive and finite.
void check_screen_geometry(const ScreenGeometry& geom);

enum class Axis { kX, kY };

// 1 - SS_res / SS_tot, SS_tot taken about the mean of truth. Throws
// kLengthMismatch (different lengths or fewer than 2) or kZeroVariance.
double r_squared(std::span<const double> pred, std::span<const double> truth);

double pixel_to_cm(double err_px, Axis axis, const ScreenGeometry& geom);
// atan(err_cm / view_distance_cm) in degrees.
double cm_to_deg(double err_cm, const ScreenGeometry& geom);
double cm_to_deg(double err_cm, double view_distance_cm);

// Summation is done on a sorted copy with Neumaier compensation, so the
// result does not depend on the order of the input.
double stable_sum(std::span<const double> values);
double mean(std::span<const double> values);
// Sample standard deviation (n - 1) over sqrt(n). NaN for fewer than 2 values.
double standard_error(std::span<const double> values);

struct AxisReport {
  double r_squared = 0.0;  // NaN when truth has no variance
  double mean_abs_error_px = 0.0;
  double sem_px = 0.0;
  double mean_abs_error_cm = 0.0;
  double sem_cm = 0.0;
  // Always cm_to_deg() of the cm field next to it.
  double mean_angular_error_deg = 0.0;
  double sem_deg = 0.0;
};

struct EvaluationReport {
  AxisReport x;
  AxisReport y;
  std::size_t sample_count = 0;
  std::size_t skipped_count = 0;
  // 2D Euclidean error, informational.
  double mean_euclidean_error_px = 0.0;
  double sem_euclidean_error_px = 0.0;
  double view_distance_cm = 0.0;
};

enum class DegeneratePolicy { kSkipAndCount, kFailFast };

struct LabeledFrame {
  FrameLandmarks frame;
  ScreenPoint target_px;
};

// Throws kEmptySession when nothing is left to evaluate. Frames whose
// descriptors are degenerate are skipped and counted, or rethrown under
// kFailFast.
EvaluationReport evaluate(const GazeModel& model, std::span<const LabeledFrame> session,
                          const ScreenGeometry& geom,
                          DegeneratePolicy policy = DegeneratePolicy::kSkipAndCount);
EvaluationReport evaluate(const GazeModel& model, std::span<const CalibrationSample> session,
                          const ScreenGeometry& geom);
// Metrics over raw prediction/truth pairs.
EvaluationReport evaluate_predictions(std::span<const ScreenPoint> predictions,
                                      std::span<const ScreenPoint> truth,
                                      const ScreenGeometry& geom);

// Key-value text in the same family as the model file.
std::string format_report(const EvaluationReport& report);
std::string report_csv_header();
std::string report_csv_row(const EvaluationReport& report);

}  // namespace geogaze
