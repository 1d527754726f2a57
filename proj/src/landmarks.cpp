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

#include "geogaze/landmarks.hpp"

#include <cmath>
#include <string>

#include "geogaze/error.hpp"

namespace geogaze {

static_assert(landmark_index::kLeftMca < FrameLandmarks::kPointCount);
static_assert(landmark_index::kRightMca < FrameLandmarks::kPointCount);
static_assert(landmark_index::kMidEyes < FrameLandmarks::kPointCount);
static_assert(landmark_index::kBottomNose < FrameLandmarks::kPointCount);
static_assert(landmark_index::kLeftLimbus.back() < FrameLandmarks::kPointCount);
static_assert(landmark_index::kRightLimbus.back() < FrameLandmarks::kPointCount);

namespace {

bool in_range(double v) { return v >= kMinNormalizedCoord && v <= kMaxNormalizedCoord; }

}  // namespace

FrameLandmarks validate_frame(std::span<const Landmark3> points, std::int64_t timestamp_ms) {
  if (points.size() != FrameLandmarks::kPointCount) {
    throw Error(Errc::kWrongPointCount, "expected " + std::to_string(FrameLandmarks::kPointCount) +
                                            " landmarks, got " + std::to_string(points.size()));
  }
  FrameLandmarks frame;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Landmark3& p = points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw Error(Errc::kNonFiniteCoordinate,
                  "landmark " + std::to_string(i) + " has a non-finite coordinate");
    }
    if (!in_range(p.x) || !in_range(p.y)) {
      throw Error(Errc::kOutOfRangeCoordinate,
                  "landmark " + std::to_string(i) + " lies outside [-0.5, 1.5]");
    }
    frame.points_[i] = p;
  }
  frame.timestamp_ms_ = timestamp_ms;
  return frame;
}

}  // namespace geogaze
