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

#include "geogaze/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "geogaze/error.hpp"

namespace geogaze {

namespace {

constexpr std::size_t kN = kRegressorCount;

}  // namespace

std::array<double, kN> singular_values(const std::array<std::array<double, kN>, kN>& m) {
  // One-sided Jacobi (Hestenes): rotate column pairs until mutually
  // orthogonal; the column norms are then the singular values.
  std::array<std::array<double, kN>, kN> cols{};  // cols[j][i] = m[i][j]
  for (std::size_t i = 0; i < kN; ++i) {
    for (std::size_t j = 0; j < kN; ++j) cols[j][i] = m[i][j];
  }
  auto dot = [](const std::array<double, kN>& a, const std::array<double, kN>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < kN; ++i) s += a[i] * b[i];
    return s;
  };
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < kN; ++p) {
      for (std::size_t q = p + 1; q < kN; ++q) {
        const double alpha = dot(cols[p], cols[p]);
        const double beta = dot(cols[q], cols[q]);
        const double gamma = dot(cols[p], cols[q]);
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < kN; ++i) {
          const double a = cols[p][i];
          const double b = cols[q][i];
          cols[p][i] = c * a - s * b;
          cols[q][i] = s * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }
  std::array<double, kN> sv{};
  for (std::size_t j = 0; j < kN; ++j) sv[j] = std::sqrt(dot(cols[j], cols[j]));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

LeastSquaresSolution solve_least_squares(std::span<const DesignRow> rows,
                                         std::span<const double> rhs) {
  const std::size_t m = rows.size();
  if (m < kN) {
    throw Error(Errc::kTooFewSamples, "least squares needs at least " + std::to_string(kN) +
                                          " samples, got " + std::to_string(m));
  }
  if (rhs.size() != m) {
    throw Error(Errc::kLengthMismatch, "design matrix and right-hand side differ in length");
  }

  // Column-major working copy.
  std::vector<std::vector<double>> a(kN, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < kN; ++j) a[j][i] = rows[i][j];
  }
  std::vector<double> b(rhs.begin(), rhs.end());
  std::vector<double> v(m);

  for (std::size_t k = 0; k < kN; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm = std::hypot(norm, a[k][i]);
    if (norm == 0.0) continue;  // zero column; caught by the condition check
    const double alpha = a[k][k] > 0.0 ? -norm : norm;
    for (std::size_t i = k; i < m; ++i) v[i] = a[k][i];
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    // H = I - 2 v v^T / (v^T v)
    for (std::size_t j = k; j < kN; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i] * a[j][i];
      s = 2.0 * s / vnorm2;
      for (std::size_t i = k; i < m; ++i) a[j][i] -= s * v[i];
    }
    double s = 0.0;
    for (std::size_t i = k; i < m; ++i) s += v[i] * b[i];
    s = 2.0 * s / vnorm2;
    for (std::size_t i = k; i < m; ++i) b[i] -= s * v[i];
  }

  std::array<std::array<double, kN>, kN> r{};
  for (std::size_t i = 0; i < kN; ++i) {
    for (std::size_t j = i; j < kN; ++j) r[i][j] = a[j][i];
  }
  const auto sv = singular_values(r);
  const double condition =
      sv.back() > 0.0 ? sv.front() / sv.back() : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxConditionNumber)) {
    throw Error(Errc::kRankDeficient,
                "design matrix condition number " + std::to_string(condition) + " exceeds 1e10");
  }

  LeastSquaresSolution out;
  out.condition = condition;
  for (std::size_t ii = kN; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < kN; ++j) s -= r[ii][j] * out.beta[j];
    out.beta[ii] = s / r[ii][ii];
  }

  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double pred = 0.0;
    for (std::size_t j = 0; j < kN; ++j) pred += rows[i][j] * out.beta[j];
    const double e = pred - rhs[i];
    ss += e * e;
  }
  out.residual_rms = std::sqrt(ss / static_cast<double>(m));
  return out;
}

}  // namespace geogaze
