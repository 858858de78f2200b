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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/model.hpp"

namespace docforge {

inline constexpr std::string_view kDocumentSchemaTag = "docforge-doc";
inline constexpr int kDocumentSchemaVersion = 1;

struct MarkdownPolicy {
  std::set<DocItemLabel> suppress_labels = {DocItemLabel::kPageHeader,
                                            DocItemLabel::kPageFooter};
  std::string title_prefix = "##";
  std::string section_prefix = "###";
  std::string bullet = "- ";
  std::string picture_placeholder = "<!-- image -->";
};

// Canonical JSON: fixed key order, two-space indent, trailing newline.
// Throws SerializeError("invalid document") when validation fails.
std::string to_json(const Document& doc);

// Throws SerializeError with a byte offset (syntax) or JSON pointer (schema).
Document from_json(std::string_view text);

std::string to_markdown(const Document& doc, const MarkdownPolicy& policy = {});

// Text of every grid position after span expansion; uncovered positions are
// empty. A spanning cell's text appears in every position it covers.
std::vector<std::vector<std::string>> expand_table(const TableStructure& table);

// Pipe table; leading all-column-header rows sit above the separator (the
// first row does when no row is a header row).
std::string table_to_markdown(const TableStructure& table);

}  // namespace docforge
