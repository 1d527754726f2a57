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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

#include "geogaze/error.hpp"
#include "geogaze/landmarks.hpp"
#include "test_support.hpp"

namespace geogaze {
namespace {

using testing_support::uniform_points;

Errc error_of(std::span<const Landmark3> pts) {
  try {
    validate_frame(pts);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected validate_frame to throw";
  return Errc::kInvalidArgument;
}

TEST(ValidateFrame, AcceptsDegenerateButWellFormedFrame) {
  const auto pts = uniform_points();
  const FrameLandmarks f = validate_frame(pts, 1234);
  EXPECT_EQ(f.timestamp_ms(), 1234);
  EXPECT_EQ(f.points().size(), 478u);
  EXPECT_EQ(f[477], (Landmark3{0.5, 0.5, 0.0}));
}

TEST(ValidateFrame, RejectsWrongPointCount) {
  for (std::size_t n : {0u, 1u, 468u, 477u, 479u}) {
    std::vector<Landmark3> pts(n, Landmark3{0.5, 0.5, 0.0});
    EXPECT_EQ(error_of(pts), Errc::kWrongPointCount) << n;
  }
}

TEST(ValidateFrame, RejectsOutOfRangeCoordinates) {
  auto pts = uniform_points();
  pts[10].y = 2.0;
  EXPECT_EQ(error_of(pts), Errc::kOutOfRangeCoordinate);
  pts = uniform_points();
  pts[0].x = -0.5000001;
  EXPECT_EQ(error_of(pts), Errc::kOutOfRangeCoordinate);
}

TEST(ValidateFrame, RangeBoundsAreInclusiveAndZIsUnbounded) {
  auto pts = uniform_points();
  pts[1] = {-0.5, 1.5, 42.0};
  pts[2] = {1.5, -0.5, -42.0};
  EXPECT_NO_THROW(validate_frame(pts));
}

TEST(ValidateFrame, RejectsNonFiniteCoordinates) {
  const double bad[] = {std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::infinity(),
                        -std::numeric_limits<double>::infinity()};
  for (double b : bad) {
    for (int axis = 0; axis < 3; ++axis) {
      auto pts = uniform_points();
      (axis == 0 ? pts[200].x : axis == 1 ? pts[200].y : pts[200].z) = b;
      EXPECT_EQ(error_of(pts), Errc::kNonFiniteCoordinate);
    }
  }
}

TEST(ValidateFrame, IsTotalOverRandomInputs) {
  // Every input maps to a frame or to exactly one of the three error classes.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-1.0, 2.0);
  std::uniform_int_distribution<int> count(470, 486);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Landmark3> pts(static_cast<std::size_t>(count(rng)));
    for (auto& p : pts) p = {0.5, 0.5, 0.0};
    pts[trial % pts.size()].x = coord(rng);
    try {
      const FrameLandmarks f = validate_frame(pts);
      EXPECT_EQ(pts.size(), 478u);
      for (const auto& p : f.points()) {
        EXPECT_TRUE(p.x >= -0.5 && p.x <= 1.5);
      }
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == Errc::kWrongPointCount || e.code() == Errc::kOutOfRangeCoordinate ||
                  e.code() == Errc::kNonFiniteCoordinate);
    }
  }
}

TEST(LandmarkIndex, ConstantsAreInRangeAndDistinct) {
  namespace li = landmark_index;
  EXPECT_EQ(li::kLeftMca, 362u);
  EXPECT_EQ(li::kRightMca, 133u);
  EXPECT_EQ(li::kMidEyes, 168u);
  EXPECT_EQ(li::kBottomNose, 2u);
  for (const auto& set : {li::kLeftLimbus, li::kRightLimbus}) {
    EXPECT_EQ(std::set<std::size_t>(set.begin(), set.end()).size(), 4u);
    for (std::size_t i : set) EXPECT_LT(i, FrameLandmarks::kPointCount);
  }
  EXPECT_EQ(li::kLeftLimbus, (std::array<std::size_t, 4>{469, 470, 471, 472}));
  EXPECT_EQ(li::kRightLimbus, (std::array<std::size_t, 4>{474, 475, 476, 477}));
}

}  // namespace
}  // namespace geogaze
