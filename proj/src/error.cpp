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

#include "geogaze/error.hpp"

namespace geogaze {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kWrongPointCount: return "WrongPointCount";
    case Errc::kNonFiniteCoordinate: return "NonFiniteCoordinate";
    case Errc::kOutOfRangeCoordinate: return "OutOfRangeCoordinate";
    case Errc::kDegenerateGeometry: return "DegenerateGeometry";
    case Errc::kTooFewSamples: return "TooFewSamples";
    case Errc::kRankDeficient: return "RankDeficient";
    case Errc::kMalformedModelFile: return "MalformedModelFile";
    case Errc::kUnsupportedVersion: return "UnsupportedVersion";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kZeroVariance: return "ZeroVariance";
    case Errc::kEmptySession: return "EmptySession";
    case Errc::kTargetBehindScreenPlane: return "TargetBehindScreenPlane";
    case Errc::kPoseOutOfEnvelope: return "PoseOutOfEnvelope";
    case Errc::kMissingHeader: return "MissingHeader";
    case Errc::kMalformedRecord: return "MalformedRecord";
    case Errc::kFrameValidation: return "FrameValidation";
    case Errc::kVersionMismatch: return "VersionMismatch";
    case Errc::kIoFailure: return "IoFailure";
    case Errc::kMissingTarget: return "MissingTarget";
  }
  return "Unknown";
}

}  // namespace geogaze
