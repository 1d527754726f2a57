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
#include <span>

namespace geogaze {

inline constexpr std::size_t kRegressorCount = 5;
inline constexpr double kMaxConditionNumber = 1e10;

using DesignRow = std::array<double, kRegressorCount>;
using Coefficients = std::array<double, kRegressorCount>;

struct LeastSquaresSolution {
  Coefficients beta{};
  double residual_rms = 0.0;
  // 2-norm condition number of the design matrix (ratio of extreme singular
  // values); +inf when the matrix is exactly singular.
  double condition = 0.0;
};

// Ordinary least squares for a tall design matrix with kRegressorCount
// columns, via Householder QR. The condition number comes from a one-sided
// Jacobi SVD of the triangular factor.
//
// Throws kTooFewSamples when rows.size() < kRegressorCount, kLengthMismatch
// when rhs does not match, kRankDeficient when the condition number exceeds
// kMaxConditionNumber.
LeastSquaresSolution solve_least_squares(std::span<const DesignRow> rows,
                                         std::span<const double> rhs);

// Singular values of a small square upper-triangular (or any square) matrix,
// descending. Exposed for testing.
std::array<double, kRegressorCount> singular_values(
    const std::array<std::array<double, kRegressorCount>, kRegressorCount>& m);

}  // namespace geogaze
