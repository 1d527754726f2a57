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

#include "geogaze/session_io.hpp"

#include <array>
#include <cmath>
#include <ostream>

#include "geogaze/descriptors.hpp"
#include "geogaze/error.hpp"
#include "json.hpp"
#include "text_format.hpp"

namespace geogaze {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr const char* kTypeHeader = "header";
constexpr const char* kTypeFrame = "frame";

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw Error(Errc::kMalformedRecord, "line " + std::to_string(line) + ": " + why, line);
}

double number_field(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) malformed(line, std::string(key) + " must be a number");
  return it->get<double>();
}

std::string string_field(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) malformed(line, std::string(key) + " must be a string");
  return it->get<std::string>();
}

int positive_int_field(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer() || it->get<long long>() <= 0 ||
      it->get<long long>() > 1'000'000) {
    malformed(line, std::string(key) + " must be a positive integer");
  }
  return it->get<int>();
}

SessionHeader parse_header(const std::string& text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::exception&) {
    throw Error(Errc::kMissingHeader, "line 1 is not a session header", line);
  }
  if (!obj.is_object() || !obj.contains("type") || obj["type"] != kTypeHeader) {
    throw Error(Errc::kMissingHeader, "line 1 is not a session header", line);
  }
  const auto version = obj.find("format_version");
  if (version == obj.end() || !version->is_number_integer()) {
    malformed(line, "format_version must be an integer");
  }
  if (version->get<long long>() != kSessionFormatVersion) {
    throw Error(Errc::kVersionMismatch,
                "session format version " + version->dump() + " is not supported", line);
  }
  SessionHeader h;
  h.format_version = kSessionFormatVersion;
  h.subject_id = string_field(obj, "subject_id", line);
  h.session_id = string_field(obj, "session_id", line);
  h.source = string_field(obj, "source", line);
  if (h.source != "live" && h.source != "synthetic") {
    malformed(line, "source must be \"live\" or \"synthetic\"");
  }
  const auto screen = obj.find("screen");
  if (screen == obj.end() || !screen->is_object()) malformed(line, "screen must be an object");
  h.screen.width_px = positive_int_field(*screen, "width_px", line);
  h.screen.height_px = positive_int_field(*screen, "height_px", line);
  h.screen.width_cm = number_field(*screen, "width_cm", line);
  h.screen.height_cm = number_field(*screen, "height_cm", line);
  if (!(h.screen.width_cm > 0.0) || !(h.screen.height_cm > 0.0)) {
    malformed(line, "screen size in cm must be positive");
  }
  if (screen->contains("view_distance_cm")) {
    h.screen.view_distance_cm = number_field(*screen, "view_distance_cm", line);
    if (!(h.screen.view_distance_cm > 0.0)) malformed(line, "view_distance_cm must be positive");
  }
  return h;
}

SessionRecord parse_record(const std::string& text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::exception& e) {
    // Also covers numbers that overflow a double.
    malformed(line, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) malformed(line, "record is not an object");
  const auto type = obj.find("type");
  if (type == obj.end() || *type != kTypeFrame) malformed(line, "record type must be \"frame\"");

  const auto ts = obj.find("timestamp_ms");
  if (ts == obj.end() || !ts->is_number_integer()) {
    malformed(line, "timestamp_ms must be an integer");
  }

  const auto lms = obj.find("landmarks");
  if (lms == obj.end() || !lms->is_array()) malformed(line, "landmarks must be an array");
  if (lms->size() != FrameLandmarks::kPointCount) {
    malformed(line, "expected 478 landmark triples, got " + std::to_string(lms->size()));
  }
  std::array<Landmark3, FrameLandmarks::kPointCount> points;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const json& t = (*lms)[i];
    if (!t.is_array() || t.size() != 3 || !t[0].is_number() || !t[1].is_number() ||
        !t[2].is_number()) {
      malformed(line, "landmark " + std::to_string(i) + " is not a triple of numbers");
    }
    points[i] = {t[0].get<double>(), t[1].get<double>(), t[2].get<double>()};
  }

  std::optional<ScreenPoint> target;
  const auto tgt = obj.find("target_px");
  if (tgt != obj.end() && !tgt->is_null()) {
    if (!tgt->is_array() || tgt->size() != 2 || !(*tgt)[0].is_number() ||
        !(*tgt)[1].is_number()) {
      malformed(line, "target_px must be [u, v]");
    }
    target = ScreenPoint{(*tgt)[0].get<double>(), (*tgt)[1].get<double>()};
  }

  try {
    return {validate_frame(points, ts->get<std::int64_t>()), target};
  } catch (const Error& e) {
    throw Error(Errc::kFrameValidation, "line " + std::to_string(line) + ": " + e.what(), line,
                e.code());
  }
}

}  // namespace

std::string encode_header(const SessionHeader& header) {
  ordered_json screen;
  screen["width_px"] = header.screen.width_px;
  screen["height_px"] = header.screen.height_px;
  screen["width_cm"] = header.screen.width_cm;
  screen["height_cm"] = header.screen.height_cm;
  if (header.screen.view_distance_cm > 0.0) {
    screen["view_distance_cm"] = header.screen.view_distance_cm;
  }
  ordered_json obj;
  obj["type"] = kTypeHeader;
  obj["format_version"] = header.format_version;
  obj["subject_id"] = header.subject_id;
  obj["session_id"] = header.session_id;
  obj["source"] = header.source;
  obj["screen"] = std::move(screen);
  return obj.dump();
}

std::string encode_record(const SessionRecord& record) {
  // Hand-rolled: a record is ~1.4k numbers and this is on the studio's
  // per-click path. Numbers use the same shortest round-trip form as the
  // JSON library.
  std::string out = R"({"type":"frame","timestamp_ms":)";
  out += std::to_string(record.frame.timestamp_ms());
  out += R"(,"landmarks":[)";
  bool first = true;
  for (const Landmark3& p : record.frame.points()) {
    if (!first) out += ',';
    first = false;
    out += '[';
    detail::append_json_double(out, p.x);
    out += ',';
    detail::append_json_double(out, p.y);
    out += ',';
    detail::append_json_double(out, p.z);
    out += ']';
  }
  out += ']';
  if (record.target_px) {
    out += R"(,"target_px":[)";
    detail::append_json_double(out, record.target_px->u);
    out += ',';
    detail::append_json_double(out, record.target_px->v);
    out += ']';
  }
  out += '}';
  return out;
}

SessionReader::SessionReader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
  if (!in_) throw Error(Errc::kIoFailure, "cannot open session file " + path.string());
  std::string text;
  if (!std::getline(in_, text)) throw Error(Errc::kMissingHeader, "session file is empty", 1);
  line_ = 1;
  header_ = parse_header(text, line_);
}

std::optional<SessionRecord> SessionReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (detail::trim(text).empty()) continue;
    return parse_record(text, line_);
  }
  if (in_.bad()) throw Error(Errc::kIoFailure, "read error", line_);
  return std::nullopt;
}

Session read_session(const std::filesystem::path& path) {
  SessionReader reader(path);
  Session s;
  s.header = reader.header();
  while (auto rec = reader.next()) s.records.push_back(std::move(*rec));
  return s;
}

void write_session(const SessionHeader& header, std::span<const SessionRecord> records,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoFailure, "cannot open " + path.string() + " for writing");
  out << encode_header(header) << '\n';
  for (const SessionRecord& r : records) out << encode_record(r) << '\n';
  out.flush();
  if (!out) throw Error(Errc::kIoFailure, "failed writing " + path.string());
}

SessionWriter::SessionWriter(const std::filesystem::path& path, const SessionHeader& header)
    : path_(path) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  if (!fresh) {
    SessionReader existing(path);
    if (!(existing.header() == header)) {
      throw Error(Errc::kInvalidArgument,
                  "existing session file " + path.string() + " has a different header");
    }
  }
  out_.open(path, std::ios::binary | std::ios::app);
  if (!out_) throw Error(Errc::kIoFailure, "cannot open " + path.string() + " for appending");
  if (fresh) {
    out_ << encode_header(header) << '\n';
    out_.flush();
  }
}

void SessionWriter::append(const SessionRecord& record) {
  out_ << encode_record(record) << '\n';
  out_.flush();
  if (!out_) throw Error(Errc::kIoFailure, "failed appending to " + path_.string());
}

std::vector<LabeledFrame> labeled_frames(const Session& session) {
  std::vector<LabeledFrame> out;
  for (const SessionRecord& r : session.records) {
    if (r.target_px) out.push_back({r.frame, *r.target_px});
  }
  return out;
}

SampleExtraction calibration_samples(const Session& session) {
  SampleExtraction out;
  for (const SessionRecord& r : session.records) {
    if (!r.target_px) {
      ++out.unlabeled;
      continue;
    }
    try {
      out.samples.push_back({descriptor_vector(r.frame), *r.target_px, session.header.session_id});
    } catch (const Error& e) {
      if (e.code() != Errc::kDegenerateGeometry) throw;
      ++out.degenerate;
    }
  }
  return out;
}

namespace {

bool write_descriptor_row(const SessionRecord& r, std::ostream& out) {
  DescriptorVector d;
  try {
    d = descriptor_vector(r.frame);
  } catch (const Error& e) {
    if (e.code() != Errc::kDegenerateGeometry) throw;
    return false;
  }
  std::string row;
  for (double v : d.as_array()) {
    detail::append_double(row, v);
    row += ',';
  }
  if (r.target_px) {
    detail::append_double(row, r.target_px->u);
    row += ',';
    detail::append_double(row, r.target_px->v);
  } else {
    row += ',';
  }
  out << row << '\n';
  return true;
}

}  // namespace

ExportStats export_descriptors(std::span<const SessionRecord> records, std::ostream& out) {
  ExportStats stats;
  out << kDescriptorCsvHeader << '\n';
  for (const SessionRecord& r : records) {
    if (write_descriptor_row(r, out)) {
      ++stats.rows;
    } else {
      ++stats.skipped;
    }
  }
  return stats;
}

ExportStats export_descriptors(const std::filesystem::path& session_path,
                               const std::filesystem::path& out_path) {
  SessionReader reader(session_path);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoFailure, "cannot open " + out_path.string() + " for writing");
  ExportStats stats;
  out << kDescriptorCsvHeader << '\n';
  while (auto rec = reader.next()) {
    if (write_descriptor_row(*rec, out)) {
      ++stats.rows;
    } else {
      ++stats.skipped;
    }
  }
  out.flush();
  if (!out) throw Error(Errc::kIoFailure, "failed writing " + out_path.string());
  return stats;
}

}  // namespace geogaze
