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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/geometry.hpp"

namespace docforge {

using TokenId = std::int64_t;

struct TextToken {
  TokenId id = 0;
  std::string text;
  BoundingBox bbox;
  std::optional<double> font_size;

  // Declared font size, falling back to the box height.
  double effective_font_size() const {
    return font_size ? *font_size : bbox.height();
  }

  friend bool operator==(const TextToken&, const TextToken&) = default;
};

// Reference to a page image supplied by the backend. Exactly one of `path`
// and `base64` is set; the payload is a binary PGM (P5) image.
struct RasterRef {
  int dpi = 72;
  std::string path;
  std::string base64;

  friend bool operator==(const RasterRef&, const RasterRef&) = default;
};

enum class DocItemLabel {
  kTitle,
  kSectionHeader,
  kText,
  kListItem,
  kCaption,
  kFootnote,
  kFormula,
  kPageHeader,
  kPageFooter,
  kPicture,
  kTable,
  kCode,
};

inline constexpr DocItemLabel kAllLabels[] = {
    DocItemLabel::kTitle,      DocItemLabel::kSectionHeader,
    DocItemLabel::kText,       DocItemLabel::kListItem,
    DocItemLabel::kCaption,    DocItemLabel::kFootnote,
    DocItemLabel::kFormula,    DocItemLabel::kPageHeader,
    DocItemLabel::kPageFooter, DocItemLabel::kPicture,
    DocItemLabel::kTable,      DocItemLabel::kCode,
};

// snake_case wire name, e.g. "section_header".
std::string_view label_name(DocItemLabel label);

// Inverse of label_name; nullopt for anything outside the closed set.
std::optional<DocItemLabel> parse_label(std::string_view name);

// A labelled, scored region candidate.
struct LayoutProposal {
  BoundingBox bbox;
  DocItemLabel label = DocItemLabel::kText;
  double confidence = 1.0;

  friend bool operator==(const LayoutProposal&, const LayoutProposal&) =
      default;
};

struct ParsedPage {
  int page_no = 1;
  double width = 0;
  double height = 0;
  std::vector<TextToken> tokens;
  std::optional<RasterRef> raster;
  // Region proposals supplied alongside the page (e.g. pictures found by an
  // external detector). Merged with the heuristic detector's output.
  std::vector<LayoutProposal> proposals;

  const TextToken* find_token(TokenId id) const;

  friend bool operator==(const ParsedPage&, const ParsedPage&) = default;
};

enum class CellRole { kColumnHeader, kRowHeader, kBody };

std::string_view role_name(CellRole role);
std::optional<CellRole> parse_role(std::string_view name);

struct TableCell {
  int start_row = 0;
  int start_col = 0;
  int row_span = 1;
  int col_span = 1;
  CellRole role = CellRole::kBody;
  std::string text;
  std::vector<TokenId> source_token_ids;
  // Union of the fragments that produced this cell; the region used to match
  // page tokens back into the cell.
  BoundingBox bbox;

  int end_row() const { return start_row + row_span; }
  int end_col() const { return start_col + col_span; }

  friend bool operator==(const TableCell&, const TableCell&) = default;
};

struct TableStructure {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<TableCell> cells;

  // Index of the cell covering (row, col), or -1 for an empty position.
  int cell_at(int row, int col) const;

  friend bool operator==(const TableStructure&, const TableStructure&) =
      default;
};

struct ProvenanceItem {
  int page_no = 1;
  BoundingBox bbox;
  std::vector<TokenId> token_ids;

  friend bool operator==(const ProvenanceItem&, const ProvenanceItem&) =
      default;
};

struct DocItem {
  DocItemLabel label = DocItemLabel::kText;
  std::string text;
  std::vector<ProvenanceItem> prov;
  std::optional<TableStructure> table;
  // On Caption items: index of the Picture/Table item it describes.
  std::optional<std::size_t> caption_of;
  // Set on entries that follow a References heading.
  bool reference_entry = false;

  friend bool operator==(const DocItem&, const DocItem&) = default;
};

struct DocumentMetadata {
  std::optional<std::string> title;
  std::vector<std::string> authors;
  std::optional<std::string> language;

  friend bool operator==(const DocumentMetadata&, const DocumentMetadata&) =
      default;
};

struct PageInfo {
  int page_no = 1;
  double width = 0;
  double height = 0;

  friend bool operator==(const PageInfo&, const PageInfo&) = default;
};

struct Document {
  std::string name;
  DocumentMetadata metadata;
  std::vector<PageInfo> pages;
  // Reading order.
  std::vector<DocItem> items;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Violation {
  std::optional<std::size_t> item_index;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

// ISO-639-1 codes the language detector can produce.
bool is_supported_language(std::string_view code);

// Check every Document/DocItem/TableStructure invariant. Token references are
// checked only when the parsed pages are supplied.
ValidationReport validate_document(
    const Document& doc, const std::vector<ParsedPage>* parsed = nullptr);

// Table-only checks, shared with the table stage.
void validate_table(const TableStructure& table,
                    std::optional<std::size_t> item_index,
                    ValidationReport& report);

}  // namespace docforge
