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

#include "docforge/model.hpp"

#include <array>
#include <set>
#include <unordered_map>

namespace docforge {

namespace {

constexpr std::array<std::string_view, 12> kLabelNames = {
    "title",       "section_header", "text",        "list_item",
    "caption",     "footnote",       "formula",     "page_header",
    "page_footer", "picture",        "table",       "code",
};

constexpr std::array<std::string_view, 3> kRoleNames = {
    "column_header", "row_header", "body"};

constexpr std::array<std::string_view, 5> kLanguages = {"en", "de", "fr", "es",
                                                        "it"};

}  // namespace

std::string_view label_name(DocItemLabel label) {
  return kLabelNames[static_cast<std::size_t>(label)];
}

std::optional<DocItemLabel> parse_label(std::string_view name) {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == name) return static_cast<DocItemLabel>(i);
  }
  return std::nullopt;
}

std::string_view role_name(CellRole role) {
  return kRoleNames[static_cast<std::size_t>(role)];
}

std::optional<CellRole> parse_role(std::string_view name) {
  for (std::size_t i = 0; i < kRoleNames.size(); ++i) {
    if (kRoleNames[i] == name) return static_cast<CellRole>(i);
  }
  return std::nullopt;
}

bool is_supported_language(std::string_view code) {
  for (auto l : kLanguages) {
    if (l == code) return true;
  }
  return false;
}

const TextToken* ParsedPage::find_token(TokenId id) const {
  for (const auto& t : tokens) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

int TableStructure::cell_at(int row, int col) const {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (row >= c.start_row && row < c.end_row() && col >= c.start_col &&
        col < c.end_col()) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

void validate_table(const TableStructure& table,
                    std::optional<std::size_t> item_index,
                    ValidationReport& report) {
  auto fail = [&](std::string msg) {
    report.push_back({item_index, std::move(msg)});
  };
  if (table.n_rows < 1 || table.n_cols < 1) {
    fail("table must have at least one row and one column");
    return;
  }
  std::vector<int> owner(static_cast<std::size_t>(table.n_rows) * table.n_cols,
                         -1);
  for (std::size_t ci = 0; ci < table.cells.size(); ++ci) {
    const auto& c = table.cells[ci];
    const std::string where = "table cell " + std::to_string(ci);
    if (c.row_span < 1 || c.col_span < 1) {
      fail(where + ": spans must be >= 1");
      continue;
    }
    if (c.start_row < 0 || c.start_col < 0 || c.end_row() > table.n_rows ||
        c.end_col() > table.n_cols) {
      fail(where + ": extent exceeds the grid");
      continue;
    }
    if (!c.bbox.valid()) fail(where + ": invalid bounding box");
    bool overlapped = false;
    for (int r = c.start_row; r < c.end_row(); ++r) {
      for (int col = c.start_col; col < c.end_col(); ++col) {
        int& slot = owner[static_cast<std::size_t>(r) * table.n_cols + col];
        if (slot >= 0) overlapped = true;
        slot = static_cast<int>(ci);
      }
    }
    if (overlapped) fail(where + ": overlaps another cell");
  }
}

ValidationReport validate_document(const Document& doc,
                                   const std::vector<ParsedPage>* parsed) {
  ValidationReport report;

  std::set<int> page_numbers;
  for (const auto& p : doc.pages) {
    if (!page_numbers.insert(p.page_no).second) {
      report.push_back(
          {std::nullopt, "duplicate page number " + std::to_string(p.page_no)});
    }
    if (!(p.width > 0) || !(p.height > 0) || !std::isfinite(p.width) ||
        !std::isfinite(p.height)) {
      report.push_back({std::nullopt, "page " + std::to_string(p.page_no) +
                                          " has non-positive dimensions"});
    }
  }
  if (doc.metadata.language && !is_supported_language(*doc.metadata.language)) {
    report.push_back({std::nullopt, "unsupported language code '" +
                                        *doc.metadata.language + "'"});
  }

  std::unordered_map<int, const ParsedPage*> parsed_by_no;
  if (parsed) {
    for (const auto& p : *parsed) parsed_by_no[p.page_no] = &p;
  }

  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    const DocItem& item = doc.items[i];
    auto fail = [&](std::string msg) { report.push_back({i, std::move(msg)}); };

    if (item.prov.empty()) fail("item has no provenance");
    for (const auto& prov : item.prov) {
      if (!page_numbers.count(prov.page_no)) {
        fail("provenance references missing page " +
             std::to_string(prov.page_no));
        continue;
      }
      if (!prov.bbox.valid()) fail("provenance bounding box is invalid");
      if (parsed) {
        auto it = parsed_by_no.find(prov.page_no);
        if (it == parsed_by_no.end()) continue;
        for (TokenId id : prov.token_ids) {
          if (!it->second->find_token(id)) {
            fail("token " + std::to_string(id) + " does not exist on page " +
                 std::to_string(prov.page_no));
          }
        }
      }
    }

    const bool is_table = item.label == DocItemLabel::kTable;
    if (is_table && !item.table) fail("table item lacks a table structure");
    if (!is_table && item.table) fail("non-table item carries a table structure");
    if (item.table) validate_table(*item.table, i, report);

    if (item.label == DocItemLabel::kPicture && !item.text.empty()) {
      fail("picture item carries text");
    }
    if (item.caption_of) {
      if (item.label != DocItemLabel::kCaption) {
        fail("caption link set on a non-caption item");
      } else if (*item.caption_of >= doc.items.size()) {
        fail("caption link points past the end of the document");
      } else {
        const auto target = doc.items[*item.caption_of].label;
        if (target != DocItemLabel::kPicture && target != DocItemLabel::kTable) {
          fail("caption linked to an item that is neither picture nor table");
        }
      }
    }
  }
  return report;
}

}  // namespace docforge
