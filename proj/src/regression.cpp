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

#include "geogaze/regression.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "geogaze/error.hpp"
#include "text_format.hpp"

namespace geogaze {

DesignRows design_rows(const DescriptorVector& d) {
  return {{1.0, d.r_y, d.pp_x, d.w_f, d.me_x}, {1.0, d.r_x, d.pp_y, d.h_f, d.me_y}};
}

GazeModel fit(std::span<const CalibrationSample> samples) {
  if (samples.size() < kRegressorCount) {
    throw Error(Errc::kTooFewSamples, "calibration needs at least 5 samples, got " +
                                          std::to_string(samples.size()));
  }
  std::vector<DesignRow> rows_x;
  std::vector<DesignRow> rows_y;
  std::vector<double> us;
  std::vector<double> vs;
  rows_x.reserve(samples.size());
  rows_y.reserve(samples.size());
  us.reserve(samples.size());
  vs.reserve(samples.size());
  for (const CalibrationSample& s : samples) {
    if (!std::isfinite(s.target_px.u) || !std::isfinite(s.target_px.v)) {
      throw Error(Errc::kInvalidArgument, "calibration target is not finite");
    }
    const DesignRows rows = design_rows(s.descriptor);
    rows_x.push_back(rows.x);
    rows_y.push_back(rows.y);
    us.push_back(s.target_px.u);
    vs.push_back(s.target_px.v);
  }
  const LeastSquaresSolution sx = solve_least_squares(rows_x, us);
  const LeastSquaresSolution sy = solve_least_squares(rows_y, vs);

  GazeModel model;
  model.beta_x = sx.beta;
  model.beta_y = sy.beta;
  model.fit_info.sample_count = samples.size();
  model.fit_info.residual_rms_x = sx.residual_rms;
  model.fit_info.residual_rms_y = sy.residual_rms;
  model.fit_info.condition_x = sx.condition;
  model.fit_info.condition_y = sy.condition;
  for (std::size_t i = 0; i < kRegressorCount; ++i) {
    if (!std::isfinite(model.beta_x[i]) || !std::isfinite(model.beta_y[i])) {
      throw Error(Errc::kRankDeficient, "fit produced a non-finite coefficient");
    }
  }
  return model;
}

ScreenPoint predict(const GazeModel& model, const DescriptorVector& d) {
  const DesignRows rows = design_rows(d);
  ScreenPoint p;
  for (std::size_t i = 0; i < kRegressorCount; ++i) {
    p.u += model.beta_x[i] * rows.x[i];
    p.v += model.beta_y[i] * rows.y[i];
  }
  return p;
}

namespace {

constexpr const char* kFormatVersion = "format_version";
constexpr const char* kBetaX = "beta_x";
constexpr const char* kBetaY = "beta_y";
constexpr const char* kSampleCount = "sample_count";
constexpr const char* kRmsX = "residual_rms_x";
constexpr const char* kRmsY = "residual_rms_y";
constexpr const char* kCondX = "condition_x";
constexpr const char* kCondY = "condition_y";

[[noreturn]] void malformed(const std::string& why) {
  throw Error(Errc::kMalformedModelFile, "malformed model file: " + why);
}

Coefficients parse_coefficients(const std::string& key, std::string_view value) {
  Coefficients out{};
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < value.size()) {
    const auto start = value.find_first_not_of(' ', pos);
    if (start == std::string_view::npos) break;
    auto end = value.find(' ', start);
    if (end == std::string_view::npos) end = value.size();
    if (n == kRegressorCount) malformed(key + " has more than 5 coefficients");
    const auto parsed = detail::parse_double(value.substr(start, end - start));
    if (!parsed || !std::isfinite(*parsed)) malformed(key + " has an invalid coefficient");
    out[n++] = *parsed;
    pos = end;
  }
  if (n != kRegressorCount) malformed(key + " must have exactly 5 coefficients");
  return out;
}

double parse_scalar(const std::string& key, std::string_view value) {
  const auto parsed = detail::parse_double(value);
  if (!parsed || std::isnan(*parsed)) malformed(key + " is not a number");
  return *parsed;
}

}  // namespace

std::string serialize_model(const GazeModel& model) {
  std::string out = "# geogaze gaze model\n";
  auto line = [&](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  auto coeffs = [](const Coefficients& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ' ';
      detail::append_double(s, c[i]);
    }
    return s;
  };
  line(kFormatVersion, std::to_string(model.fit_info.format_version));
  line(kBetaX, coeffs(model.beta_x));
  line(kBetaY, coeffs(model.beta_y));
  line(kSampleCount, std::to_string(model.fit_info.sample_count));
  line(kRmsX, detail::format_double(model.fit_info.residual_rms_x));
  line(kRmsY, detail::format_double(model.fit_info.residual_rms_y));
  line(kCondX, detail::format_double(model.fit_info.condition_x));
  line(kCondY, detail::format_double(model.fit_info.condition_y));
  return out;
}

GazeModel deserialize_model(std::string_view text) {
  std::map<std::string, std::string> fields;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = detail::trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      malformed("line " + std::to_string(line_no) + " is not a key = value pair");
    }
    std::string key(detail::trim(line.substr(0, eq)));
    std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) malformed("line " + std::to_string(line_no) + " has an empty key");
    if (!fields.emplace(key, value).second) malformed("duplicate key " + key);
  }

  const auto version_it = fields.find(kFormatVersion);
  if (version_it == fields.end()) malformed("missing format_version");
  const auto version = detail::parse_int<int>(version_it->second);
  if (!version) malformed("format_version is not an integer");
  if (*version != kModelFormatVersion) {
    throw Error(Errc::kUnsupportedVersion,
                "unsupported model format version " + version_it->second);
  }

  auto require = [&](const char* key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) malformed(std::string("missing ") + key);
    return it->second;
  };

  GazeModel model;
  model.fit_info.format_version = *version;
  model.beta_x = parse_coefficients(kBetaX, require(kBetaX));
  model.beta_y = parse_coefficients(kBetaY, require(kBetaY));
  const auto count = detail::parse_int<std::size_t>(require(kSampleCount));
  if (!count) malformed("sample_count is not an integer");
  if (*count < kRegressorCount) malformed("sample_count below 5");
  model.fit_info.sample_count = *count;
  model.fit_info.residual_rms_x = parse_scalar(kRmsX, require(kRmsX));
  model.fit_info.residual_rms_y = parse_scalar(kRmsY, require(kRmsY));
  model.fit_info.condition_x = parse_scalar(kCondX, require(kCondX));
  model.fit_info.condition_y = parse_scalar(kCondY, require(kCondY));

  if (fields.size() != 8) malformed("unknown keys present");
  return model;
}

void save_model(const GazeModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoFailure, "cannot open " + path + " for writing");
  out << serialize_model(model);
  out.flush();
  if (!out) throw Error(Errc::kIoFailure, "failed writing " + path);
}

GazeModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoFailure, "cannot open model file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace geogaze
