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

#include "text_util.hpp"

#include <cctype>

namespace docforge::text {

bool starts_with_enumerator(std::string_view s) {
  s = trim(s);
  std::size_t i = 0;
  const bool paren = !s.empty() && s[0] == '(';
  if (paren) ++i;
  const std::size_t start = i;
  if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i - start > 3) return false;
  } else if (i < s.size() && std::islower(static_cast<unsigned char>(s[i]))) {
    // Single letter or short roman numeral.
    while (i < s.size() && i - start < 4 &&
           std::string_view("ivxlc").find(s[i]) != std::string_view::npos) {
      ++i;
    }
    if (i == start) ++i;
  } else {
    return false;
  }
  if (i >= s.size()) return false;
  if (paren) return s[i] == ')';
  if (s[i] == ')') return true;
  // "1." must be followed by whitespace or end so "3.14" is not a list.
  return s[i] == '.' && (i + 1 == s.size() || s[i + 1] == ' ') &&
         std::isdigit(static_cast<unsigned char>(s[start]));
}

bool is_numeric(std::string_view s) {
  s = trim(s);
  if (s.empty()) return false;
  if (s == "-" || s == "–" || s == "—") return true;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-' || s[i] == '~') ++i;
  bool digit = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c == '.' || c == ',' || c == ' ') {
      continue;
    } else if (c == '%' && i + 1 == s.size()) {
      continue;
    } else {
      return false;
    }
  }
  return digit;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace docforge::text
