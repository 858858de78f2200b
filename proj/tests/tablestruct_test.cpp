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

#include "docforge/tablestruct.hpp"

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "docforge/error.hpp"
#include "oracles.hpp"

namespace docforge {
namespace {

using testing::token;

const BoundingBox kEverywhere{-1000, -1000, 10000, 10000};

TEST(InferTableStructure, OneFragment) {
  const auto t = infer_table_structure(kEverywhere, std::vector{token(0, "9.4", 0, 0, 20, 10)});
  EXPECT_EQ(t.n_rows, 1);
  EXPECT_EQ(t.n_cols, 1);
  ASSERT_EQ(t.cells.size(), 1u);
  EXPECT_EQ(t.cells[0].row_span, 1);
  EXPECT_EQ(t.cells[0].col_span, 1);
  // A lone row is the header row.
  EXPECT_EQ(t.cells[0].role, CellRole::kColumnHeader);
}

TEST(InferTableStructure, TwoByTwo) {
  // Columns [0,40] and [100,140] are 60 apart, over max(0.5 * 40, 4) = 20.
  // Rows [0,10] and [20,30] are 10 apart, over 0.4 * 10 = 4.
  const std::vector<TextToken> t = {token(0, "a", 0, 0, 40, 10), token(1, "b", 100, 0, 140, 10),
                                    token(2, "c", 0, 20, 40, 30), token(3, "d", 100, 20, 140, 30)};
  const auto grid = infer_table_grid(t);
  EXPECT_EQ(grid.column_threshold, 20.0);
  EXPECT_EQ(grid.row_threshold, 4.0);
  const auto s = infer_table_structure(kEverywhere, t);
  EXPECT_EQ(s.n_rows, 2);
  EXPECT_EQ(s.n_cols, 2);
  ASSERT_EQ(s.cells.size(), 4u);
  EXPECT_EQ(s.cells[3].text, "d");
  EXPECT_EQ(s.cells[3].start_row, 1);
  EXPECT_EQ(s.cells[3].start_col, 1);
}

TEST(InferTableStructure, HeaderSpanningThreeColumns) {
  const std::string header = "triple inter-annotator mAP@0.5-0.95 (%)";
  std::vector<TextToken> t;
  TokenId id = 0;
  t.push_back(token(id++, "triple", 60, 0, 90, 10));
  t.push_back(token(id++, "inter-annotator", 95, 0, 170, 10));
  t.push_back(token(id++, "mAP@0.5-0.95", 175, 0, 235, 10));
  t.push_back(token(id++, "(%)", 240, 0, 255, 10));
  const char* row[] = {"human", "84", "83", "85"};
  for (int r = 1; r <= 2; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double l = c * 70;
      t.push_back(token(id++, row[c], l, r * 20, l + 25, r * 20 + 10));
    }
  }
  const auto s = infer_table_structure(kEverywhere, t);
  EXPECT_EQ(s.n_cols, 4);
  const int ci = s.cell_at(0, 1);
  ASSERT_GE(ci, 0);
  const auto& cell = s.cells[static_cast<std::size_t>(ci)];
  EXPECT_EQ(cell.text, header);
  EXPECT_EQ(cell.start_col, 1);
  EXPECT_EQ(cell.col_span, 3);
  EXPECT_EQ(cell.role, CellRole::kColumnHeader);
}

TEST(InferTableStructure, EmptyRegionThrows) {
  EXPECT_THROW(infer_table_structure({0, 0, 10, 10}, std::vector{token(0, "x", 50, 50, 60, 60)}),
               TableStructureError);
}

TEST(InferTableStructure, IgnoresTokensOutsideRegion) {
  const auto s = infer_table_structure(
      {0, 0, 50, 50}, std::vector{token(0, "in", 0, 0, 20, 10), token(1, "out", 100, 0, 120, 10)});
  ASSERT_EQ(s.cells.size(), 1u);
  EXPECT_EQ(s.cells[0].text, "in");
}

TEST(InferTableStructure, MultiTokenFragmentsKeepTokenOrder) {
  const std::vector<TextToken> t = {token(5, "world", 32, 0, 57, 10), token(9, "hello", 0, 0, 27, 10)};
  const auto s = infer_table_structure(kEverywhere, t);
  ASSERT_EQ(s.cells.size(), 1u);
  EXPECT_EQ(s.cells[0].text, "hello world");
  EXPECT_EQ(s.cells[0].source_token_ids, (std::vector<TokenId>{9, 5}));
}

TEST(FindSpanning, StraddlingIntervalOnly) {
  const std::vector<Interval> iv = {{0, 40}, {100, 140}, {0, 140}, {10, 30}};
  EXPECT_EQ(find_spanning(iv, 20), (std::vector<bool>{false, false, true, false}));
  // Narrower intervals too close together do not make a span.
  EXPECT_EQ(find_spanning(iv, 80), (std::vector<bool>{false, false, false, false}));
}

TEST(GridOracle, GeneratedTables) {
  testing::Rng rng(44);
  int spanning = 0;
  for (int i = 0; i < 500; ++i) {
    const auto tc = testing::random_table_case(rng);
    const auto grid = infer_table_grid(tc.tokens);

    std::vector<testing::Band> xs, ys;
    std::vector<double> widths, heights;
    for (const auto& t : tc.tokens) {
      xs.push_back({t.bbox.left, t.bbox.right});
      ys.push_back({t.bbox.top, t.bbox.bottom});
      widths.push_back(t.bbox.width());
      heights.push_back(t.bbox.height());
    }
    const double col_thr = std::max(0.5 * testing::oracle_median(widths), 4.0);
    const double row_thr = 0.4 * testing::oracle_median(heights);
    EXPECT_EQ(grid.column_threshold, col_thr);
    const auto cols = testing::bands_oracle(xs, col_thr);
    const auto rows = testing::bands_oracle(ys, row_thr);
    ASSERT_EQ(grid.columns.size(), cols.size());
    ASSERT_EQ(grid.rows.size(), rows.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      EXPECT_EQ(grid.columns[c].lo, cols[c].lo);
      EXPECT_EQ(grid.columns[c].hi, cols[c].hi);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      EXPECT_EQ(grid.rows[r].lo, rows[r].lo);
      EXPECT_EQ(grid.rows[r].hi, rows[r].hi);
    }

    const auto s = infer_table_structure(tc.region, tc.tokens);
    ASSERT_EQ(s.n_rows, tc.n_rows);
    ASSERT_EQ(s.n_cols, tc.n_cols);
    ASSERT_EQ(s.cells.size(), tc.cells.size());
    for (std::size_t k = 0; k < s.cells.size(); ++k) {
      EXPECT_EQ(s.cells[k].start_row, tc.cells[k].row);
      EXPECT_EQ(s.cells[k].start_col, tc.cells[k].col);
      EXPECT_EQ(s.cells[k].row_span, tc.cells[k].row_span);
      EXPECT_EQ(s.cells[k].col_span, tc.cells[k].col_span);
      EXPECT_EQ(s.cells[k].text, tc.cells[k].text);
      spanning += tc.cells[k].col_span > 1;
    }
    ValidationReport report;
    validate_table(s, std::nullopt, report);
    EXPECT_TRUE(report.empty());
  }
  EXPECT_GT(spanning, 20);
}

TEST(ClassifyCellRoles, OneByOne) {
  TableStructure t{1, 1, {}};
  t.cells.push_back({});
  t.cells[0].text = "x";
  EXPECT_EQ(classify_cell_roles(t).cells[0].role, CellRole::kColumnHeader);
}

TableCell cell(int r, int c, std::string text, int rs = 1, int cs = 1) {
  TableCell out;
  out.start_row = r;
  out.start_col = c;
  out.row_span = rs;
  out.col_span = cs;
  out.text = std::move(text);
  out.bbox = {double(c * 50), double(r * 20), double((c + cs) * 50), double((r + rs) * 20)};
  return out;
}

TEST(ClassifyCellRoles, SpanningHeaderWithSubHeaders) {
  TableStructure t{4, 4, {}};
  t.cells = {cell(0, 1, "triple inter-annotator mAP@0.5-0.95 (%)", 1, 3),
             cell(1, 0, "class"),  cell(1, 1, "all"),  cell(1, 2, "min"),  cell(1, 3, "max"),
             cell(2, 0, "Caption"), cell(2, 1, "84-89"), cell(2, 2, "40"),  cell(2, 3, "91"),
             cell(3, 0, "Footnote"), cell(3, 1, "83-91"), cell(3, 2, "43"), cell(3, 3, "85")};
  const auto out = classify_cell_roles(t);
  for (const auto& c : out.cells) {
    if (c.start_row <= 1) {
      EXPECT_EQ(c.role, CellRole::kColumnHeader) << c.text;
    } else if (c.start_col == 0) {
      EXPECT_EQ(c.role, CellRole::kRowHeader) << c.text;
    } else {
      EXPECT_EQ(c.role, CellRole::kBody) << c.text;
    }
  }
}

TEST(ClassifyCellRoles, NumericBodyWithTextFirstColumn) {
  TableStructure t{4, 3, {}};
  t.cells = {cell(0, 0, "model"), cell(0, 1, "mAP"), cell(0, 2, "speed"),
             cell(1, 0, "human"), cell(1, 1, "82"),  cell(1, 2, "1.0"),
             cell(2, 0, "MRCNN"), cell(2, 1, "73"),  cell(2, 2, "2.5"),
             cell(3, 0, "YOLO"),  cell(3, 1, "76"),  cell(3, 2, "0.3")};
  const auto out = classify_cell_roles(t);
  // Three of three body rows have non-numeric first cells, over the 60% bar.
  for (const auto& c : out.cells) {
    const CellRole want = c.start_row == 0   ? CellRole::kColumnHeader
                          : c.start_col == 0 ? CellRole::kRowHeader
                                             : CellRole::kBody;
    EXPECT_EQ(c.role, want) << c.text;
  }
}

TEST(ClassifyCellRoles, NumericFirstColumnIsBody) {
  TableStructure t{3, 2, {}};
  t.cells = {cell(0, 0, "year"), cell(0, 1, "count"), cell(1, 0, "2021"), cell(1, 1, "5"),
             cell(2, 0, "2022"), cell(2, 1, "7")};
  for (const auto& c : classify_cell_roles(t).cells) {
    if (c.start_row > 0) {
      EXPECT_EQ(c.role, CellRole::kBody);
    }
  }
}

TEST(MatchBack, EmptyStructureUnchanged) {
  const TableStructure t{2, 2, {}};
  EXPECT_EQ(match_back(t, std::vector{token(0, "x", 0, 0, 5, 5)}), t);
}

TEST(MatchBack, SingleToken) {
  TableStructure t{1, 1, {cell(0, 0, "")}};
  const auto out = match_back(t, std::vector{token(4, "9.4", 5, 5, 20, 15)});
  EXPECT_EQ(out.cells[0].text, "9.4");
  EXPECT_EQ(out.cells[0].source_token_ids, std::vector<TokenId>{4});
}

TEST(MatchBack, StraddlingTokenGoesToLargerOverlap) {
  TableStructure t{1, 2, {cell(0, 0, ""), cell(0, 1, "")}};
  // Cell boundary at x = 50; token [36, 56] is 70% left, 30% right.
  const std::vector<TextToken> toks = {token(0, "mid", 36, 5, 56, 15)};
  EXPECT_DOUBLE_EQ(bbox_overlap_frac(toks[0].bbox, t.cells[0].bbox), 0.7);
  const auto out = match_back(t, toks);
  EXPECT_EQ(out.cells[0].text, "mid");
  EXPECT_EQ(out.cells[1].text, "");
}

TEST(MatchBack, DroppedTokensReported) {
  TableStructure t{1, 1, {cell(0, 0, "")}};
  std::vector<TokenId> dropped;
  match_back(t, std::vector{token(0, "in", 5, 5, 20, 15), token(1, "far", 500, 500, 520, 510)}, {},
             &dropped);
  EXPECT_EQ(dropped, std::vector<TokenId>{1});
}

TEST(MatchBack, NoRetranscriptionAndPartition) {
  testing::Rng rng(55);
  for (int i = 0; i < 300; ++i) {
    const auto tc = testing::random_table_case(rng);
    const auto s = match_back(infer_table_structure(tc.region, tc.tokens), tc.tokens);
    std::set<TokenId> seen;
    for (const auto& c : s.cells) {
      std::vector<std::string> parts;
      for (TokenId id : c.source_token_ids) {
        ASSERT_TRUE(seen.insert(id).second);
        const auto it = std::find_if(tc.tokens.begin(), tc.tokens.end(),
                                     [&](const TextToken& t) { return t.id == id; });
        ASSERT_NE(it, tc.tokens.end());
        parts.push_back(it->text);
      }
      std::string joined;
      for (std::size_t k = 0; k < parts.size(); ++k) joined += (k ? " " : "") + parts[k];
      EXPECT_EQ(c.text, joined);
    }
    long area = 0;
    for (const auto& c : s.cells) area += long(c.row_span) * c.col_span;
    EXPECT_LE(area, long(s.n_rows) * s.n_cols);
  }
}

}  // namespace
}  // namespace docforge
