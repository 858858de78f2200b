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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/layout.hpp"
#include "docforge/model.hpp"
#include "docforge/page_state.hpp"

namespace docforge {

struct AssembleOptions {
  // Vertical whitespace wider than this fraction of the page width separates
  // columns.
  double column_gap = 0.03;
  // Captions look for their figure within this many caption heights.
  double caption_search_heights = 1.5 * 10;
  // When false, Table clusters become Text items instead of carrying an
  // empty structure.
  bool table_structure_enabled = true;
};

// Recursive XY-cut over one page's clusters. Returns cluster ids. Page
// headers come first and page footers last.
std::vector<int> infer_reading_order(std::span<const LayoutCluster> clusters,
                                     double page_width,
                                     double column_gap = 0.03);

// Caption links for one page's items (in reading order). Entry i holds the
// index of the Picture/Table described by item i, for linked captions.
// Every target is claimed at most once.
std::vector<std::optional<std::size_t>> match_captions(
    std::span<const DocItem> items, double search_heights = 15.0,
    std::vector<std::string>* warnings = nullptr);

// Stopword profiling over en/de/fr/es/it. Returns a language only when its
// hit count is at least twice the runner-up and at least 10.
std::optional<std::string> detect_language(std::string_view sample);

// Per-language stopword hits, in the order en, de, fr, es, it.
std::vector<std::pair<std::string, int>> stopword_hits(std::string_view sample);

// First 5000 characters of the document's Text and ListItem content.
std::string language_sample(const Document& doc);

// Title from the first page-1 Title item; authors from the name lines between
// it and the first section heading or abstract.
DocumentMetadata extract_metadata(const Document& doc);

// Indices of the items extract_metadata reads authors from.
std::vector<std::size_t> author_item_indices(const Document& doc);

// Mark Text/ListItem entries under a References/Bibliography heading.
void tag_references(Document& doc);

// Aggregate processed pages into a validated Document. Throws AssemblyError
// when the result breaks a document invariant.
Document assemble_document(std::string name, std::span<const PageState> pages,
                           const AssembleOptions& opts,
                           std::vector<std::string>& warnings);

}  // namespace docforge
