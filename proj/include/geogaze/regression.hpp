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
#include <string_view>

#include "geogaze/descriptors.hpp"
#include "geogaze/least_squares.hpp"

namespace geogaze {

// A point on the screen in pixels; not clamped to the screen bounds.
struct ScreenPoint {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const ScreenPoint&, const ScreenPoint&) = default;
};

struct CalibrationSample {
  DescriptorVector descriptor;
  ScreenPoint target_px;
  std::string session_id;
};

inline constexpr int kModelFormatVersion = 1;

struct FitInfo {
  std::size_t sample_count = 0;
  double residual_rms_x = 0.0;
  double residual_rms_y = 0.0;
  double condition_x = 0.0;
  double condition_y = 0.0;
  int format_version = kModelFormatVersion;

  friend bool operator==(const FitInfo&, const FitInfo&) = default;
};

// Two independent 5-coefficient linear models:
//   u = beta_x . [1, r_y, pp_x, w_f, me_x]
//   v = beta_y . [1, r_x, pp_y, h_f, me_y]
struct GazeModel {
  Coefficients beta_x{};
  Coefficients beta_y{};
  FitInfo fit_info;

  friend bool operator==(const GazeModel&, const GazeModel&) = default;
};

struct DesignRows {
  DesignRow x{};
  DesignRow y{};
};

DesignRows design_rows(const DescriptorVector& d);

// Fits both axes by ordinary least squares. Throws kTooFewSamples (< 5) or
// kRankDeficient (condition number of either design matrix above 1e10).
GazeModel fit(std::span<const CalibrationSample> samples);

ScreenPoint predict(const GazeModel& model, const DescriptorVector& d);

// Key-value text; see docs/file-formats.md. Coefficients are written in
// shortest round-trip form.
std::string serialize_model(const GazeModel& model);
// Throws kMalformedModelFile or kUnsupportedVersion.
GazeModel deserialize_model(std::string_view text);

void save_model(const GazeModel& model, const std::string& path);
GazeModel load_model(const std::string& path);

}  // namespace geogaze
