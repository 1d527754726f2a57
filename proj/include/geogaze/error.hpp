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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geogaze {

// Every failure the library reports. The numeric values are mirrored by
// gg_status in the C API, so only append to this list.
enum class Errc {
  kInvalidArgument = 1,
  // landmark_model
  kWrongPointCount,
  kNonFiniteCoordinate,
  kOutOfRangeCoordinate,
  // descriptors
  kDegenerateGeometry,
  // regression
  kTooFewSamples,
  kRankDeficient,
  kMalformedModelFile,
  kUnsupportedVersion,
  // metrics
  kLengthMismatch,
  kZeroVariance,
  kEmptySession,
  // synth
  kTargetBehindScreenPlane,
  kPoseOutOfEnvelope,
  // session_io
  kMissingHeader,
  kMalformedRecord,
  kFrameValidation,
  kVersionMismatch,
  kIoFailure,
  kMissingTarget,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  // Errors raised while parsing a file carry the 1-based line number and,
  // for kFrameValidation, the validation error that caused it.
  Error(Errc code, const std::string& what, std::size_t line,
        std::optional<Errc> cause = std::nullopt)
      : std::runtime_error(what), code_(code), line_(line), cause_(cause) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  std::optional<Errc> cause() const noexcept { return cause_; }

 private:
  Errc code_;
  std::optional<std::size_t> line_;
  std::optional<Errc> cause_;
};

}  // namespace geogaze
