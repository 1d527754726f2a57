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

#include "geogaze/descriptors.hpp"

#include <cmath>
#include <string>

#include "geogaze/error.hpp"

namespace geogaze {
namespace {

namespace li = landmark_index;

double checked_ratio(double num, double den, const char* what) {
  if (!(std::abs(den) >= kDegeneracyThreshold)) {
    throw Error(Errc::kDegenerateGeometry, std::string(what) + ": denominator below 1e-6");
  }
  return num / den;
}

double checked_distance(const Landmark3& a, const Landmark3& b, const char* what) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (!(d >= kDegeneracyThreshold)) {
    throw Error(Errc::kDegenerateGeometry, std::string(what) + ": landmarks coincide");
  }
  return d;
}

PupilOffset pupil_offset_scaled(const FrameLandmarks& frame, EyeSide side, double w_f,
                                double h_f) {
  const bool left = side == EyeSide::kLeft;
  const Landmark3& mca = frame[left ? li::kLeftMca : li::kRightMca];
  const auto& limbus = left ? li::kLeftLimbus : li::kRightLimbus;
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t idx : limbus) {
    sx += frame[idx].x;
    sy += frame[idx].y;
  }
  return {(mca.x - sx / 4.0) / w_f, (mca.y - sy / 4.0) / h_f};
}

}  // namespace

double head_yaw_ratio(const FrameLandmarks& frame) {
  const Landmark3& l = frame[li::kLeftMca];
  const Landmark3& r = frame[li::kRightMca];
  return checked_ratio(l.z - r.z, l.x - r.x, "head yaw ratio");
}

double head_pitch_ratio(const FrameLandmarks& frame) {
  const Landmark3& me = frame[li::kMidEyes];
  const Landmark3& bn = frame[li::kBottomNose];
  return checked_ratio(me.z - bn.z, me.y - bn.y, "head pitch ratio");
}

double face_width(const FrameLandmarks& frame) {
  return checked_distance(frame[li::kLeftMca], frame[li::kRightMca], "face width");
}

double face_height(const FrameLandmarks& frame) {
  return checked_distance(frame[li::kMidEyes], frame[li::kBottomNose], "face height");
}

PupilOffset pupil_offset(const FrameLandmarks& frame, EyeSide side) {
  return pupil_offset_scaled(frame, side, face_width(frame), face_height(frame));
}

PupilOffset combined_pupil_offset(const FrameLandmarks& frame) {
  const double w_f = face_width(frame);
  const double h_f = face_height(frame);
  const PupilOffset l = pupil_offset_scaled(frame, EyeSide::kLeft, w_f, h_f);
  const PupilOffset r = pupil_offset_scaled(frame, EyeSide::kRight, w_f, h_f);
  return {l.x + r.x, l.y + r.y};
}

DescriptorVector descriptor_vector(const FrameLandmarks& frame) {
  DescriptorVector d;
  d.r_y = head_yaw_ratio(frame);
  d.r_x = head_pitch_ratio(frame);
  d.w_f = face_width(frame);
  d.h_f = face_height(frame);
  d.me_x = frame[li::kMidEyes].x;
  d.me_y = frame[li::kMidEyes].y;
  const PupilOffset l = pupil_offset_scaled(frame, EyeSide::kLeft, d.w_f, d.h_f);
  const PupilOffset r = pupil_offset_scaled(frame, EyeSide::kRight, d.w_f, d.h_f);
  d.pp_x = l.x + r.x;
  d.pp_y = l.y + r.y;
  return d;
}

}  // namespace geogaze
