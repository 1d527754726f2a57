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
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geogaze/landmarks.hpp"
#include "geogaze/metrics.hpp"
#include "geogaze/regression.hpp"

namespace geogaze {

inline constexpr int kSessionFormatVersion = 1;

// First line of a session file. screen.view_distance_cm is optional in the
// file and left at 0 when absent.
struct SessionHeader {
  int format_version = kSessionFormatVersion;
  std::string subject_id;
  std::string session_id;
  ScreenGeometry screen;
  std::string source = "live";  // "live" or "synthetic"

  friend bool operator==(const SessionHeader&, const SessionHeader&) = default;
};

struct SessionRecord {
  FrameLandmarks frame;
  std::optional<ScreenPoint> target_px;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

struct Session {
  SessionHeader header;
  std::vector<SessionRecord> records;
};

// One JSON object per line, no trailing newline.
std::string encode_header(const SessionHeader& header);
std::string encode_record(const SessionRecord& record);

// Streaming reader: holds at most one record in memory. Errors carry the
// 1-based line number of the offending line.
//
//   kMissingHeader     first line absent or not a header record
//   kVersionMismatch   header format_version is not kSessionFormatVersion
//   kMalformedRecord   unparsable line, wrong field types, not 478 triples
//   kFrameValidation   landmarks fail validate_frame (cause() says why)
class SessionReader {
 public:
  explicit SessionReader(const std::filesystem::path& path);

  const SessionHeader& header() const noexcept { return header_; }
  // Next body record, or nullopt at end of file.
  std::optional<SessionRecord> next();
  // Line number of the last line consumed.
  std::size_t line() const noexcept { return line_; }

 private:
  std::ifstream in_;
  SessionHeader header_;
  std::size_t line_ = 0;
};

Session read_session(const std::filesystem::path& path);

// Truncates and writes header + records; throws kIoFailure.
void write_session(const SessionHeader& header, std::span<const SessionRecord> records,
                   const std::filesystem::path& path);

// Append-only single writer. Writes the header when the file is new or
// empty; otherwise checks that the existing header matches.
class SessionWriter {
 public:
  SessionWriter(const std::filesystem::path& path, const SessionHeader& header);
  void append(const SessionRecord& record);

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

// Labeled frames only; unlabeled records are dropped.
std::vector<LabeledFrame> labeled_frames(const Session& session);

struct SampleExtraction {
  std::vector<CalibrationSample> samples;
  std::size_t unlabeled = 0;
  std::size_t degenerate = 0;
};

// Descriptors for every labeled frame; degenerate frames are skipped and
// counted.
SampleExtraction calibration_samples(const Session& session);

struct ExportStats {
  std::size_t rows = 0;
  std::size_t skipped = 0;
};

inline constexpr const char* kDescriptorCsvHeader = "r_y,r_x,w_f,h_f,me_x,me_y,pp_x,pp_y,u,v";

// One row per frame: the 8 descriptors, then target u,v (empty fields for
// unlabeled frames). Degenerate frames are skipped and counted.
ExportStats export_descriptors(std::span<const SessionRecord> records, std::ostream& out);
ExportStats export_descriptors(const std::filesystem::path& session_path,
                               const std::filesystem::path& out_path);

}  // namespace geogaze
