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

#include "geogaze/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "geogaze/descriptors.hpp"
#include "geogaze/error.hpp"
#include "geogaze/session_io.hpp"
#include "json.hpp"

namespace geogaze {

namespace {

namespace li = landmark_index;

Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
Vec3 normalized(Vec3 a) { return (1.0 / std::sqrt(dot(a, a))) * a; }

double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

struct Rotation {
  double m[3][3];

  Vec3 operator*(Vec3 v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }

  Rotation operator*(const Rotation& o) const {
    Rotation r{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
      }
    }
    return r;
  }
};

// yaw about y, pitch about x, roll about z; R = Ry * Rx * Rz.
Rotation head_rotation(const HeadPose& pose) {
  const double cy = std::cos(deg2rad(pose.yaw_deg)), sy = std::sin(deg2rad(pose.yaw_deg));
  const double cp = std::cos(deg2rad(pose.pitch_deg)), sp = std::sin(deg2rad(pose.pitch_deg));
  const double cr = std::cos(deg2rad(pose.roll_deg)), sr = std::sin(deg2rad(pose.roll_deg));
  const Rotation ry{{{cy, 0, sy}, {0, 1, 0}, {-sy, 0, cy}}};
  const Rotation rx{{{1, 0, 0}, {0, cp, -sp}, {0, sp, cp}}};
  const Rotation rz{{{cr, -sr, 0}, {sr, cr, 0}, {0, 0, 1}}};
  return ry * rx * rz;
}

bool is_modeled(std::size_t i) {
  return i == li::kLeftMca || i == li::kRightMca || i == li::kMidEyes || i == li::kBottomNose ||
         i >= 468;
}

// Deterministic Fibonacci points on the front half of the skull ellipsoid.
std::vector<Vec3> filler_points(const HeadGeometry& head) {
  constexpr std::size_t kTotal = FrameLandmarks::kPointCount;
  std::size_t count = 0;
  for (std::size_t i = 0; i < kTotal; ++i) count += is_modeled(i) ? 0 : 1;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(count);
    const double polar = std::acos(1.0 - t);
    const double azimuth = golden * static_cast<double>(j);
    const Vec3 dir{std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
                   -std::cos(polar)};
    out.push_back({head.shell_radii_cm.x * dir.x, head.shell_radii_cm.y * dir.y,
                   head.shell_radii_cm.z * dir.z});
  }
  return out;
}

void check_envelope(const HeadPose& pose) {
  const bool ok = std::isfinite(pose.position_cm.x) && std::isfinite(pose.position_cm.y) &&
                  pose.position_cm.z >= 20.0 && pose.position_cm.z <= 200.0 &&
                  std::abs(pose.yaw_deg) <= 30.0 && std::abs(pose.pitch_deg) <= 30.0 &&
                  std::abs(pose.roll_deg) <= 15.0;
  if (!ok) {
    throw Error(Errc::kPoseOutOfEnvelope,
                "head pose outside the generator envelope (z in [20, 200] cm, |yaw|, |pitch| <= "
                "30 deg, |roll| <= 15 deg)");
  }
}

Vec3 screen_point_cm(const ScreenPoint& px, const SynthConfig& cfg) {
  const double pitch_x = cfg.screen.width_cm / cfg.screen.width_px;
  const double pitch_y = cfg.screen.height_cm / cfg.screen.height_px;
  return {cfg.placement.center_x_cm - (px.u - 0.5 * cfg.screen.width_px) * pitch_x,
          cfg.placement.top_y_cm + px.v * pitch_y, cfg.placement.plane_z_cm};
}

void place_eye(const Vec3& center, const Vec3& target, const Vec3& head_down,
               const HeadGeometry& head, std::size_t iris_index,
               const std::array<std::size_t, 4>& limbus, const SynthConfig& cfg,
               std::vector<Vec3>& pts) {
  if (!(center.z > cfg.placement.plane_z_cm)) {
    throw Error(Errc::kTargetBehindScreenPlane, "the eye is not in front of the screen plane");
  }
  const Vec3 gaze = normalized(target - center);
  const Vec3 iris = center + head.eyeball_radius_cm * gaze;
  const Vec3 down = normalized(head_down - dot(head_down, gaze) * gaze);
  const Vec3 side = cross(gaze, down);
  const double rho = head.limbus_radius_cm;
  pts[iris_index] = iris;
  pts[limbus[0]] = iris + rho * side;
  pts[limbus[1]] = iris - rho * down;
  pts[limbus[2]] = iris - rho * side;
  pts[limbus[3]] = iris + rho * down;
}

}  // namespace

void check_synth_config(const SynthConfig& cfg) {
  auto fail = [](const std::string& why) {
    throw Error(Errc::kInvalidArgument, "invalid synth config: " + why);
  };
  const HeadGeometry& h = cfg.head;
  if (!(h.limbus_radius_cm > 0.0) || !(h.eyeball_radius_cm > h.limbus_radius_cm)) {
    fail("need eyeball_radius > limbus_radius > 0");
  }
  const Vec3 d = h.left_mca - h.right_mca;
  if (!(dot(d, d) > 0.0)) fail("canthi coincide");
  if (!(h.shell_radii_cm.x > 0.0 && h.shell_radii_cm.y > 0.0 && h.shell_radii_cm.z > 0.0)) {
    fail("shell radii must be positive");
  }
  if (!(cfg.noise_sigma >= 0.0) || !std::isfinite(cfg.noise_sigma)) fail("noise_sigma must be >= 0");
  if (!(cfg.camera.focal_x > 0.0) || !(cfg.camera.focal_y > 0.0)) fail("focal lengths must be > 0");
  if (cfg.frames_per_session < 1 || cfg.sessions < 1) fail("need at least one session and frame");
  const PoseVariation& v = cfg.variation;
  for (double x : {v.base_translation_cm, v.base_distance_cm, v.base_angle_deg,
                   v.frame_translation_cm, v.frame_angle_deg, v.frame_roll_deg}) {
    if (!(x >= 0.0) || !std::isfinite(x)) fail("pose variation ranges must be >= 0");
  }
  check_screen_geometry(cfg.screen);
}

std::vector<Vec3> place_landmarks(const HeadPose& pose, const ScreenPoint& target_px,
                                  const SynthConfig& cfg) {
  check_envelope(pose);
  if (!(target_px.u >= 0.0 && target_px.u < cfg.screen.width_px && target_px.v >= 0.0 &&
        target_px.v < cfg.screen.height_px)) {
    throw Error(Errc::kInvalidArgument, "gaze target is off screen");
  }
  const Rotation rot = head_rotation(pose);
  auto to_camera = [&](const Vec3& p) { return pose.position_cm + rot * p; };
  const HeadGeometry& head = cfg.head;

  std::vector<Vec3> pts(FrameLandmarks::kPointCount);
  const std::vector<Vec3> filler = filler_points(head);
  std::size_t next_filler = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!is_modeled(i)) pts[i] = to_camera(filler[next_filler++]);
  }
  pts[li::kLeftMca] = to_camera(head.left_mca);
  pts[li::kRightMca] = to_camera(head.right_mca);
  pts[li::kMidEyes] = to_camera(head.mid_eyes);
  pts[li::kBottomNose] = to_camera(head.bottom_nose);

  const Vec3 target = screen_point_cm(target_px, cfg);
  const Vec3 head_down = rot * Vec3{0.0, 1.0, 0.0};
  place_eye(to_camera(head.left_eye_center), target, head_down, head, 468, li::kLeftLimbus, cfg,
            pts);
  place_eye(to_camera(head.right_eye_center), target, head_down, head, 473, li::kRightLimbus,
            cfg, pts);
  return pts;
}

SynthSample synth_frame(const HeadPose& pose, const ScreenPoint& target_px,
                        const SynthConfig& cfg, std::int64_t timestamp_ms,
                        std::mt19937_64& rng) {
  check_synth_config(cfg);
  const std::vector<Vec3> pts = place_landmarks(pose, target_px, cfg);

  double depth_sum = 0.0;
  for (const Vec3& p : pts) depth_sum += p.z;
  const double centroid_depth = depth_sum / static_cast<double>(pts.size());

  const CameraIntrinsics& cam = cfg.camera;
  std::array<Landmark3, FrameLandmarks::kPointCount> lm;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3& p = pts[i];
    lm[i] = {cam.principal_x + cam.focal_x * p.x / p.z, cam.principal_y + cam.focal_y * p.y / p.z,
             (p.z - centroid_depth) * cam.focal_x / centroid_depth};
  }
  if (cfg.noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg.noise_sigma);
    for (Landmark3& l : lm) {
      l.x += noise(rng);
      l.y += noise(rng);
      l.z += noise(rng);
    }
  }

  FrameLandmarks frame = validate_frame(lm, timestamp_ms);
  CalibrationSample sample{descriptor_vector(frame), target_px, {}};
  return {std::move(frame), std::move(sample)};
}

SynthSample synth_frame(const HeadPose& pose, const ScreenPoint& target_px,
                        const SynthConfig& cfg, std::int64_t timestamp_ms) {
  std::mt19937_64 rng(cfg.seed);
  return synth_frame(pose, target_px, cfg, timestamp_ms, rng);
}

std::vector<SynthSample> synth_session(const SynthConfig& cfg, int session_index) {
  check_synth_config(cfg);
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(session_index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto symmetric = [&](double half_range) { return half_range * (2.0 * unit(rng) - 1.0); };
  // uniform_real_distribution may round up to its upper bound.
  auto below = [&](double limit) { return std::min(limit * unit(rng), std::nextafter(limit, 0.0)); };

  const PoseVariation& var = cfg.variation;
  HeadPose base = cfg.base_pose;
  base.position_cm.x += symmetric(var.base_translation_cm);
  base.position_cm.y += symmetric(var.base_translation_cm);
  base.position_cm.z += symmetric(var.base_distance_cm);
  base.yaw_deg += symmetric(var.base_angle_deg);
  base.pitch_deg += symmetric(var.base_angle_deg);

  const std::string session_id = "session-" + std::to_string(session_index);
  std::vector<SynthSample> out;
  out.reserve(static_cast<std::size_t>(cfg.frames_per_session));
  for (int i = 0; i < cfg.frames_per_session; ++i) {
    const ScreenPoint target{below(cfg.screen.width_px), below(cfg.screen.height_px)};
    HeadPose pose = base;
    pose.position_cm.x += symmetric(var.frame_translation_cm);
    pose.position_cm.y += symmetric(var.frame_translation_cm);
    pose.position_cm.z += symmetric(var.frame_translation_cm);
    pose.yaw_deg += symmetric(var.frame_angle_deg);
    pose.pitch_deg += symmetric(var.frame_angle_deg);
    pose.roll_deg += symmetric(var.frame_roll_deg);
    SynthSample s = synth_frame(pose, target, cfg, static_cast<std::int64_t>(i) * 1000, rng);
    s.sample.session_id = session_id;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& why) {
  throw Error(Errc::kInvalidArgument, "synth config: " + why);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  if (!obj.is_object()) bad_config(std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      bad_config("unknown key \"" + key + "\" in " + where);
    }
  }
}

void read_number(const json& obj, const char* key, double& out) {
  if (!obj.contains(key)) return;
  if (!obj[key].is_number()) bad_config(std::string(key) + " must be a number");
  out = obj[key].get<double>();
}

template <typename Int>
void read_int(const json& obj, const char* key, Int& out) {
  if (!obj.contains(key)) return;
  if (!obj[key].is_number_integer()) bad_config(std::string(key) + " must be an integer");
  out = obj[key].get<Int>();
}

void read_vec3(const json& obj, const char* key, Vec3& out) {
  if (!obj.contains(key)) return;
  const json& a = obj[key];
  if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
      !a[2].is_number()) {
    bad_config(std::string(key) + " must be [x, y, z]");
  }
  out = {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

}  // namespace

SynthConfig load_synth_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoFailure, "cannot open synth config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    bad_config(std::string("invalid JSON: ") + e.what());
  }
  SynthConfig cfg;
  check_keys(doc,
             {"seed", "sessions", "frames_per_session", "noise_sigma", "camera", "screen",
              "placement", "head", "base_pose", "variation"},
             "config");
  read_int(doc, "seed", cfg.seed);
  read_int(doc, "sessions", cfg.sessions);
  read_int(doc, "frames_per_session", cfg.frames_per_session);
  read_number(doc, "noise_sigma", cfg.noise_sigma);
  if (doc.contains("camera")) {
    const json& c = doc["camera"];
    check_keys(c, {"focal_x", "focal_y", "principal_x", "principal_y"}, "camera");
    read_number(c, "focal_x", cfg.camera.focal_x);
    read_number(c, "focal_y", cfg.camera.focal_y);
    read_number(c, "principal_x", cfg.camera.principal_x);
    read_number(c, "principal_y", cfg.camera.principal_y);
  }
  if (doc.contains("screen")) {
    const json& s = doc["screen"];
    check_keys(s, {"width_px", "height_px", "width_cm", "height_cm", "view_distance_cm"}, "screen");
    read_int(s, "width_px", cfg.screen.width_px);
    read_int(s, "height_px", cfg.screen.height_px);
    read_number(s, "width_cm", cfg.screen.width_cm);
    read_number(s, "height_cm", cfg.screen.height_cm);
    read_number(s, "view_distance_cm", cfg.screen.view_distance_cm);
  }
  if (doc.contains("placement")) {
    const json& p = doc["placement"];
    check_keys(p, {"center_x_cm", "top_y_cm", "plane_z_cm"}, "placement");
    read_number(p, "center_x_cm", cfg.placement.center_x_cm);
    read_number(p, "top_y_cm", cfg.placement.top_y_cm);
    read_number(p, "plane_z_cm", cfg.placement.plane_z_cm);
  }
  if (doc.contains("head")) {
    const json& h = doc["head"];
    check_keys(h,
               {"left_mca", "right_mca", "mid_eyes", "bottom_nose", "left_eye_center",
                "right_eye_center", "eyeball_radius_cm", "limbus_radius_cm", "shell_radii_cm"},
               "head");
    read_vec3(h, "left_mca", cfg.head.left_mca);
    read_vec3(h, "right_mca", cfg.head.right_mca);
    read_vec3(h, "mid_eyes", cfg.head.mid_eyes);
    read_vec3(h, "bottom_nose", cfg.head.bottom_nose);
    read_vec3(h, "left_eye_center", cfg.head.left_eye_center);
    read_vec3(h, "right_eye_center", cfg.head.right_eye_center);
    read_number(h, "eyeball_radius_cm", cfg.head.eyeball_radius_cm);
    read_number(h, "limbus_radius_cm", cfg.head.limbus_radius_cm);
    read_vec3(h, "shell_radii_cm", cfg.head.shell_radii_cm);
  }
  if (doc.contains("base_pose")) {
    const json& b = doc["base_pose"];
    check_keys(b, {"position_cm", "yaw_deg", "pitch_deg", "roll_deg"}, "base_pose");
    read_vec3(b, "position_cm", cfg.base_pose.position_cm);
    read_number(b, "yaw_deg", cfg.base_pose.yaw_deg);
    read_number(b, "pitch_deg", cfg.base_pose.pitch_deg);
    read_number(b, "roll_deg", cfg.base_pose.roll_deg);
  }
  if (doc.contains("variation")) {
    const json& v = doc["variation"];
    check_keys(v,
               {"base_translation_cm", "base_distance_cm", "base_angle_deg",
                "frame_translation_cm", "frame_angle_deg", "frame_roll_deg"},
               "variation");
    read_number(v, "base_translation_cm", cfg.variation.base_translation_cm);
    read_number(v, "base_distance_cm", cfg.variation.base_distance_cm);
    read_number(v, "base_angle_deg", cfg.variation.base_angle_deg);
    read_number(v, "frame_translation_cm", cfg.variation.frame_translation_cm);
    read_number(v, "frame_angle_deg", cfg.variation.frame_angle_deg);
    read_number(v, "frame_roll_deg", cfg.variation.frame_roll_deg);
  }
  check_synth_config(cfg);
  return cfg;
}

std::vector<std::filesystem::path> write_synthetic_sessions(const SynthConfig& cfg,
                                                            const std::filesystem::path& out_dir) {
  check_synth_config(cfg);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::kIoFailure, "cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (int k = 1; k <= cfg.sessions; ++k) {
    const std::vector<SynthSample> samples = synth_session(cfg, k);
    SessionHeader header;
    header.subject_id = "synthetic";
    header.session_id = "session-" + std::to_string(k);
    header.screen = cfg.screen;
    header.source = "synthetic";
    std::vector<SessionRecord> records;
    records.reserve(samples.size());
    for (const SynthSample& s : samples) records.push_back({s.frame, s.sample.target_px});
    const auto path = out_dir / ("session_" + std::to_string(k) + ".jsonl");
    write_session(header, records, path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace geogaze
