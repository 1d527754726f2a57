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

// Number formatting shared by the model, report, session and CSV writers.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace geogaze::detail {

// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline void append_double(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

// As append_double, but always in floating-point form ("-0" becomes "-0.0")
// so JSON readers keep the sign of zero.
inline void append_json_double(std::string& out, double value) {
  char buf[40];
  auto res = std::to_chars(buf, buf + 32, value);
  bool has_point = false;
  for (char* p = buf; p != res.ptr; ++p) {
    if (*p == '.' || *p == 'e' || *p == 'n' || *p == 'i') has_point = true;
  }
  if (!has_point) {
    *res.ptr++ = '.';
    *res.ptr++ = '0';
  }
  out.append(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view text) {
  Int value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace geogaze::detail
