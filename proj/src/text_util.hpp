// Copyright 2026 The Docforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small string and statistics helpers shared by the stages.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace docforge::text {

// Median of a copy; 0 for an empty input. Even counts average the middle pair.
inline double median(std::vector<double> v) {
  if (v.empty()) return 0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid),
                   v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// Number of UTF-8 code points (continuation bytes are not counted).
inline std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Bullet glyphs that open a list item.
inline bool starts_with_bullet_glyph(std::string_view s) {
  s = trim(s);
  for (std::string_view g : {"•", "·", "◦", "‣", "⁃",
                             "▪", "-", "*", "–"}) {
    if (s.starts_with(g)) return true;
  }
  return false;
}

// "1." "12)" "(a)" "a)" "iv)" style enumerators.
bool starts_with_enumerator(std::string_view s);

inline bool starts_list_item(std::string_view s) {
  return starts_with_bullet_glyph(s) || starts_with_enumerator(s);
}

// Digits with optional sign, decimal separators, thousands separators,
// trailing percent, or a dash placeholder.
bool is_numeric(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace docforge::text
