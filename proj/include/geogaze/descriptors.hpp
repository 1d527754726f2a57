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

#include <array>

#include "geogaze/landmarks.hpp"

namespace geogaze {

// Denominators and distances below this (normalized image units) are
// reported as kDegenerateGeometry.
inline constexpr double kDegeneracyThreshold = 1e-6;

// The eight geometric descriptors of head and eye pose for one frame.
//
//   r_y, r_x   head yaw / pitch as raw depth-over-extent ratios (no arctan)
//   w_f, h_f   3D distance between the canthi / between mid-eyes and nose
//   me_x, me_y image position of the mid-eyes landmark
//   pp_x, pp_y sum over both eyes of (canthus - limbus centroid), x scaled
//              by 1/w_f and y scaled by 1/h_f
struct DescriptorVector {
  double r_y = 0.0;
  double r_x = 0.0;
  double w_f = 0.0;
  double h_f = 0.0;
  double me_x = 0.0;
  double me_y = 0.0;
  double pp_x = 0.0;
  double pp_y = 0.0;

  // Fixed export order: r_y, r_x, w_f, h_f, me_x, me_y, pp_x, pp_y.
  std::array<double, 8> as_array() const { return {r_y, r_x, w_f, h_f, me_x, me_y, pp_x, pp_y}; }

  friend bool operator==(const DescriptorVector&, const DescriptorVector&) = default;
};

enum class EyeSide { kLeft, kRight };

struct PupilOffset {
  double x = 0.0;
  double y = 0.0;
};

// All of these throw Error(kDegenerateGeometry) when a denominator or
// normalizing distance falls below kDegeneracyThreshold.
double head_yaw_ratio(const FrameLandmarks& frame);
double head_pitch_ratio(const FrameLandmarks& frame);
double face_width(const FrameLandmarks& frame);
double face_height(const FrameLandmarks& frame);
PupilOffset pupil_offset(const FrameLandmarks& frame, EyeSide side);
PupilOffset combined_pupil_offset(const FrameLandmarks& frame);

DescriptorVector descriptor_vector(const FrameLandmarks& frame);

}  // namespace geogaze
