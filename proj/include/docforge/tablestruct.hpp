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

#include <span>
#include <string>
#include <vector>

#include "docforge/model.hpp"

namespace docforge {

struct TableConfig {
  double line_overlap = 0.5;
  // Tokens on a line merge into one fragment when the gap is at most this
  // many median character widths.
  double fragment_gap_chars = 1.0;
  // Column cut: gap > max(col_gap_factor * median fragment width,
  // col_gap_floor).
  double col_gap_factor = 0.5;
  double col_gap_floor = 4.0;
  // Row cut: gap > row_gap_factor * median line height.
  double row_gap_factor = 0.4;
  // A fragment occupies a row/column when it overlaps that band by this
  // fraction of the smaller of the two extents.
  double span_min_overlap = 0.5;
  double match_min_overlap = 0.5;
  double row_header_min_frac = 0.6;
};

// Run of same-line tokens forming one cell's text on one line.
struct TableFragment {
  BoundingBox bbox;
  std::vector<TokenId> token_ids;
  std::string text;
};

// Extent of one column (x) or row (y).
struct AxisBand {
  double lo = 0;
  double hi = 0;

  friend bool operator==(const AxisBand&, const AxisBand&) = default;
};

struct Interval {
  double lo = 0;
  double hi = 0;
};

// Intervals that overlap two narrower intervals separated by more than
// `threshold`. These are spanning cells; they do not shape the bands.
std::vector<bool> find_spanning(std::span<const Interval> intervals,
                                double threshold);

// Hull clustering of the non-spanning intervals: sorted by left edge, a new
// band starts wherever the gap to the running hull exceeds `threshold`.
std::vector<AxisBand> cluster_axis(std::span<const Interval> intervals,
                                   double threshold);

struct TableGrid {
  std::vector<TableFragment> fragments;
  std::vector<AxisBand> columns;
  std::vector<AxisBand> rows;
  double column_threshold = 0;
  double row_threshold = 0;
};

std::vector<TableFragment> build_fragments(std::span<const TextToken> tokens,
                                           const TableConfig& cfg = {});

// Steps 1-3 of grid inference: fragments, then column and row bands.
TableGrid infer_table_grid(std::span<const TextToken> tokens,
                           const TableConfig& cfg = {});

// Full grid inference with spans and roles. Tokens less than half inside
// `region` are ignored. Throws TableStructureError when no tokens remain.
TableStructure infer_table_structure(const BoundingBox& region,
                                     std::span<const TextToken> tokens,
                                     const TableConfig& cfg = {});

// Header rows run from the top through the last row holding a column-spanning
// cell (row 0 when there is none), plus one following sub-header row of
// non-numeric labels under the spanning cells. First-column cells below the
// header become row headers when enough body rows have a non-numeric first
// cell.
TableStructure classify_cell_roles(TableStructure table,
                                   const TableConfig& cfg = {});

// Refill every cell's text and source ids from page tokens: each token goes
// to the cell region covering most of it (at least cfg.match_min_overlap).
// Ids of tokens that matched no cell are appended to `dropped`.
TableStructure match_back(const TableStructure& table,
                          std::span<const TextToken> page_tokens,
                          const TableConfig& cfg = {},
                          std::vector<TokenId>* dropped = nullptr);

}  // namespace docforge
