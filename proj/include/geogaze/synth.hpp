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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "geogaze/landmarks.hpp"
#include "geogaze/metrics.hpp"
#include "geogaze/regression.hpp"

namespace geogaze {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Camera frame: x to image right, y down, z along the optical axis towards
// the subject. Rotations are about the camera-frame axes, applied as
// yaw * pitch * roll.
struct HeadPose {
  Vec3 position_cm{0.0, 4.0, 67.8};
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
};

// Pinhole intrinsics in normalized image units (focal_x is a fraction of the
// frame width, focal_y of the frame height).
struct CameraIntrinsics {
  double focal_x = 0.9;
  double focal_y = 1.2;
  double principal_x = 0.5;
  double principal_y = 0.5;
};

// Screen plane is z = plane_z_cm in the camera frame. Pixel (0, 0) is the
// top-left corner as seen by the subject, which is image-right of the camera.
struct ScreenPlacement {
  double center_x_cm = 0.0;
  double top_y_cm = 1.0;
  double plane_z_cm = 0.0;
};

// Skull-fixed coordinates in cm; head frame axes match the camera frame at
// zero rotation, so the face looks towards -z.
struct HeadGeometry {
  Vec3 left_mca{1.6, 0.0, -9.0};
  Vec3 right_mca{-1.6, 0.0, -9.0};
  Vec3 mid_eyes{0.0, 0.0, -9.6};
  Vec3 bottom_nose{0.0, 4.5, -10.2};
  Vec3 left_eye_center{3.1, 0.0, -7.8};
  Vec3 right_eye_center{-3.1, 0.0, -7.8};
  double eyeball_radius_cm = 1.2;
  double limbus_radius_cm = 0.55;
  // Semi-axes of the ellipsoid carrying the filler landmarks.
  Vec3 shell_radii_cm{7.5, 10.0, 9.5};
};

// Session base poses are drawn uniformly within the base_* ranges around
// SynthConfig::base_pose; frames then jitter within the frame_* ranges.
struct PoseVariation {
  double base_translation_cm = 2.0;
  double base_distance_cm = 4.0;
  double base_angle_deg = 3.0;
  double frame_translation_cm = 1.0;
  double frame_angle_deg = 5.0;
  double frame_roll_deg = 2.0;
};

struct SynthConfig {
  CameraIntrinsics camera;
  ScreenGeometry screen{1920, 1080, 34.4, 19.35, 60.0};
  ScreenPlacement placement;
  HeadGeometry head;
  HeadPose base_pose;
  PoseVariation variation;
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
  int frames_per_session = 20;
  int sessions = 3;
};

// Throws kInvalidArgument when the config breaks its invariants.
void check_synth_config(const SynthConfig& cfg);

struct SynthSample {
  FrameLandmarks frame;
  CalibrationSample sample;
};

// The 3D camera-frame landmark positions (cm) before projection and noise.
std::vector<Vec3> place_landmarks(const HeadPose& pose, const ScreenPoint& target_px,
                                  const SynthConfig& cfg);

// Deterministic for a given cfg.seed. Throws kPoseOutOfEnvelope,
// kTargetBehindScreenPlane, kInvalidArgument (target off screen).
SynthSample synth_frame(const HeadPose& pose, const ScreenPoint& target_px,
                        const SynthConfig& cfg, std::int64_t timestamp_ms = 0);
// Same, drawing the landmark noise from the caller's generator.
SynthSample synth_frame(const HeadPose& pose, const ScreenPoint& target_px,
                        const SynthConfig& cfg, std::int64_t timestamp_ms,
                        std::mt19937_64& rng);

// frames_per_session samples; deterministic per (seed, session_index).
std::vector<SynthSample> synth_session(const SynthConfig& cfg, int session_index);

// Overrides defaults with whatever keys the JSON document sets; see
// docs/file-formats.md for the schema. Throws kIoFailure or
// kInvalidArgument.
SynthConfig load_synth_config(const std::string& path);

// Writes session_<k>.jsonl for k = 1..cfg.sessions and returns the paths.
std::vector<std::filesystem::path> write_synthetic_sessions(const SynthConfig& cfg,
                                                            const std::filesystem::path& out_dir);

}  // namespace geogaze
