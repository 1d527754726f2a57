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
#include <cstddef>
#include <cstdint>
#include <span>

namespace geogaze {

// One face-mesh landmark. x and y are fractions of the frame width and
// height with the origin at the top-left corner; z is relative depth on the
// same scale as x.
struct Landmark3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Landmark3&, const Landmark3&) = default;
};

// Indices into the 478-point mesh (468 face points + 10 iris points).
namespace landmark_index {

inline constexpr std::size_t kLeftMca = 362;
inline constexpr std::size_t kRightMca = 133;
inline constexpr std::size_t kMidEyes = 168;
inline constexpr std::size_t kBottomNose = 2;
inline constexpr std::array<std::size_t, 4> kLeftLimbus = {469, 470, 471, 472};
inline constexpr std::array<std::size_t, 4> kRightLimbus = {474, 475, 476, 477};

}  // namespace landmark_index

// Landmarks may slightly exceed the frame; anything further out is rejected.
inline constexpr double kMinNormalizedCoord = -0.5;
inline constexpr double kMaxNormalizedCoord = 1.5;

// A validated frame: exactly 478 finite, in-range landmarks. Only
// validate_frame() can build one, so holding a FrameLandmarks is proof that
// the invariants hold.
class FrameLandmarks {
 public:
  static constexpr std::size_t kPointCount = 478;

  const Landmark3& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Landmark3, kPointCount> points() const noexcept { return points_; }
  std::int64_t timestamp_ms() const noexcept { return timestamp_ms_; }

  friend bool operator==(const FrameLandmarks&, const FrameLandmarks&) = default;

 private:
  friend FrameLandmarks validate_frame(std::span<const Landmark3>, std::int64_t);

  std::array<Landmark3, kPointCount> points_{};
  std::int64_t timestamp_ms_ = 0;
};

// Throws Error with kWrongPointCount, kNonFiniteCoordinate or
// kOutOfRangeCoordinate. The first offending point determines the error.
FrameLandmarks validate_frame(std::span<const Landmark3> points, std::int64_t timestamp_ms = 0);

}  // namespace geogaze
