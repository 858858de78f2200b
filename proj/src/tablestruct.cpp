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
#include <limits>
#include <numeric>
#include <optional>

#include "docforge/error.hpp"
#include "docforge/kernels.hpp"
#include "docforge/layout.hpp"
#include "text_util.hpp"

namespace docforge {

namespace {

struct Range {
  int first = 0;
  int last = 0;  // inclusive
};

// Bands a fragment occupies along one axis.
Range covered_bands(double lo, double hi, const std::vector<AxisBand>& bands,
                    double min_overlap) {
  std::optional<int> first, last;
  const double mid = 0.5 * (lo + hi);
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const double extent = std::min(hi - lo, bands[b].hi - bands[b].lo);
    bool hit;
    if (extent <= 0) {
      hit = mid >= bands[b].lo && mid <= bands[b].hi;
    } else {
      hit = interval_overlap(lo, hi, bands[b].lo, bands[b].hi) >=
            min_overlap * extent;
    }
    if (hit) {
      if (!first) first = static_cast<int>(b);
      last = static_cast<int>(b);
    }
  }
  if (first) return {*first, *last};
  // No band passes the threshold: fall back to the nearest one.
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const double center = 0.5 * (bands[b].lo + bands[b].hi);
    const double d = std::abs(center - mid);
    if (d < best_dist) {
      best_dist = d;
      best = static_cast<int>(b);
    }
  }
  return {best, best};
}

struct PendingCell {
  Range rows, cols;
  BoundingBox bbox;
  std::vector<std::size_t> fragments;
};

bool extents_overlap(const PendingCell& a, const PendingCell& b) {
  return a.rows.first <= b.rows.last && b.rows.first <= a.rows.last &&
         a.cols.first <= b.cols.last && b.cols.first <= a.cols.last;
}

}  // namespace

std::vector<bool> find_spanning(std::span<const Interval> intervals,
                                double threshold) {
  std::vector<bool> spanning(intervals.size(), false);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const double width = intervals[i].hi - intervals[i].lo;
    double min_hi = std::numeric_limits<double>::infinity();
    double max_lo = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      if (j == i || intervals[j].hi - intervals[j].lo >= width) continue;
      if (interval_overlap(intervals[i].lo, intervals[i].hi, intervals[j].lo,
                           intervals[j].hi) <= 0) {
        continue;
      }
      min_hi = std::min(min_hi, intervals[j].hi);
      max_lo = std::max(max_lo, intervals[j].lo);
    }
    spanning[i] = min_hi + threshold < max_lo;
  }
  return spanning;
}

std::vector<AxisBand> cluster_axis(std::span<const Interval> intervals,
                                   double threshold) {
  const auto spanning = find_spanning(intervals, threshold);
  std::vector<Interval> core;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (!spanning[i]) core.push_back(intervals[i]);
  }
  std::sort(core.begin(), core.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<AxisBand> bands;
  for (const auto& iv : core) {
    if (bands.empty() || iv.lo - bands.back().hi > threshold) {
      bands.push_back({iv.lo, iv.hi});
    } else {
      bands.back().hi = std::max(bands.back().hi, iv.hi);
    }
  }
  return bands;
}

std::vector<TableFragment> build_fragments(std::span<const TextToken> tokens,
                                           const TableConfig& cfg) {
  std::vector<double> char_widths;
  for (const auto& t : tokens) {
    const auto len = text::utf8_length(text::trim(t.text));
    if (len > 0) char_widths.push_back(t.bbox.width() / static_cast<double>(len));
  }
  const double max_gap = cfg.fragment_gap_chars * text::median(char_widths);

  std::vector<TableFragment> fragments;
  for (const auto& line : group_lines(tokens, cfg.line_overlap)) {
    std::optional<TableFragment> current;
    for (std::size_t m : line.members) {
      const TextToken& t = tokens[m];
      if (current && t.bbox.left - current->bbox.right <= max_gap) {
        current->bbox = bbox_union(current->bbox, t.bbox);
        current->token_ids.push_back(t.id);
        current->text += " ";
        current->text += t.text;
        continue;
      }
      if (current) fragments.push_back(std::move(*current));
      current = TableFragment{t.bbox, {t.id}, t.text};
    }
    if (current) fragments.push_back(std::move(*current));
  }
  return fragments;
}

TableGrid infer_table_grid(std::span<const TextToken> tokens,
                           const TableConfig& cfg) {
  TableGrid grid;
  grid.fragments = build_fragments(tokens, cfg);
  std::vector<Interval> xs, ys;
  std::vector<double> widths, heights;
  for (const auto& f : grid.fragments) {
    xs.push_back({f.bbox.left, f.bbox.right});
    ys.push_back({f.bbox.top, f.bbox.bottom});
    widths.push_back(f.bbox.width());
    heights.push_back(f.bbox.height());
  }
  grid.column_threshold =
      std::max(cfg.col_gap_factor * text::median(widths), cfg.col_gap_floor);
  grid.row_threshold = cfg.row_gap_factor * text::median(heights);
  grid.columns = cluster_axis(xs, grid.column_threshold);
  grid.rows = cluster_axis(ys, grid.row_threshold);
  return grid;
}

TableStructure infer_table_structure(const BoundingBox& region,
                                     std::span<const TextToken> tokens,
                                     const TableConfig& cfg) {
  std::vector<TextToken> inside;
  for (const auto& t : tokens) {
    if (bbox_overlap_frac(t.bbox, region) >= 0.5) inside.push_back(t);
  }
  if (inside.empty()) {
    throw TableStructureError("table region contains no tokens");
  }
  const TableGrid grid = infer_table_grid(inside, cfg);

  std::vector<PendingCell> pending;
  for (std::size_t fi = 0; fi < grid.fragments.size(); ++fi) {
    const auto& f = grid.fragments[fi];
    pending.push_back(
        {covered_bands(f.bbox.top, f.bbox.bottom, grid.rows, cfg.span_min_overlap),
         covered_bands(f.bbox.left, f.bbox.right, grid.columns,
                       cfg.span_min_overlap),
         f.bbox,
         {fi}});
  }
  // Fragments landing on the same grid positions become one cell.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < pending.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < pending.size() && !merged; ++j) {
        if (!extents_overlap(pending[i], pending[j])) continue;
        PendingCell& a = pending[i];
        const PendingCell& b = pending[j];
        a.rows = {std::min(a.rows.first, b.rows.first),
                  std::max(a.rows.last, b.rows.last)};
        a.cols = {std::min(a.cols.first, b.cols.first),
                  std::max(a.cols.last, b.cols.last)};
        a.bbox = bbox_union(a.bbox, b.bbox);
        a.fragments.insert(a.fragments.end(), b.fragments.begin(),
                           b.fragments.end());
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
    }
  }

  TableStructure table;
  table.n_rows = static_cast<int>(grid.rows.size());
  table.n_cols = static_cast<int>(grid.columns.size());
  for (auto& p : pending) {
    std::sort(p.fragments.begin(), p.fragments.end(),
              [&](std::size_t a, std::size_t b) {
                const auto& fa = grid.fragments[a].bbox;
                const auto& fb = grid.fragments[b].bbox;
                if (fa.top != fb.top) return fa.top < fb.top;
                return fa.left < fb.left;
              });
    TableCell cell;
    cell.start_row = p.rows.first;
    cell.start_col = p.cols.first;
    cell.row_span = p.rows.last - p.rows.first + 1;
    cell.col_span = p.cols.last - p.cols.first + 1;
    cell.bbox = p.bbox;
    std::vector<std::string> parts;
    for (std::size_t fi : p.fragments) {
      const auto& f = grid.fragments[fi];
      parts.push_back(f.text);
      cell.source_token_ids.insert(cell.source_token_ids.end(),
                                   f.token_ids.begin(), f.token_ids.end());
    }
    cell.text = text::join(parts, " ");
    table.cells.push_back(std::move(cell));
  }
  std::sort(table.cells.begin(), table.cells.end(),
            [](const TableCell& a, const TableCell& b) {
              if (a.start_row != b.start_row) return a.start_row < b.start_row;
              return a.start_col < b.start_col;
            });
  return classify_cell_roles(std::move(table), cfg);
}

TableStructure classify_cell_roles(TableStructure table,
                                   const TableConfig& cfg) {
  for (auto& c : table.cells) c.role = CellRole::kBody;
  if (table.n_rows <= 0 || table.cells.empty()) return table;

  int last_span_row = -1;
  for (const auto& c : table.cells) {
    if (c.col_span > 1) last_span_row = std::max(last_span_row, c.end_row() - 1);
  }
  int header_end = 0;  // last header row, inclusive
  if (last_span_row >= 0) {
    header_end = last_span_row;
    // One row of sub-labels directly below the spanning headers, as long as
    // a body row remains after it.
    const int next = header_end + 1;
    if (next < table.n_rows - 1) {
      bool any = false;
      bool all_labels = true;
      for (const auto& span : table.cells) {
        if (span.col_span <= 1 || span.end_row() - 1 != last_span_row) continue;
        for (const auto& c : table.cells) {
          if (c.start_row != next || c.start_col < span.start_col ||
              c.end_col() > span.end_col()) {
            continue;
          }
          const auto t = text::trim(c.text);
          if (t.empty()) continue;
          any = true;
          if (text::is_numeric(t)) all_labels = false;
        }
      }
      if (any && all_labels) header_end = next;
    }
  }
  for (auto& c : table.cells) {
    if (c.start_row <= header_end) c.role = CellRole::kColumnHeader;
  }

  const int body_rows = table.n_rows - header_end - 1;
  if (body_rows <= 0) return table;
  int filled = 0;
  int labels = 0;
  for (int r = header_end + 1; r < table.n_rows; ++r) {
    const int ci = table.cell_at(r, 0);
    if (ci < 0) continue;
    const auto t = text::trim(table.cells[static_cast<std::size_t>(ci)].text);
    if (t.empty()) continue;
    ++filled;
    if (!text::is_numeric(t)) ++labels;
  }
  if (filled >= cfg.row_header_min_frac * body_rows &&
      labels >= cfg.row_header_min_frac * body_rows) {
    for (auto& c : table.cells) {
      if (c.start_col == 0 && c.start_row > header_end) {
        c.role = CellRole::kRowHeader;
      }
    }
  }
  return table;
}

TableStructure match_back(const TableStructure& table,
                          std::span<const TextToken> page_tokens,
                          const TableConfig& cfg,
                          std::vector<TokenId>* dropped) {
  TableStructure out = table;
  if (out.cells.empty()) return out;

  simd::BoxColumns regions;
  for (const auto& c : out.cells) regions.push_back(c.bbox);
  std::vector<std::vector<std::size_t>> owned(out.cells.size());
  std::vector<double> frac(out.cells.size());
  for (std::size_t ti = 0; ti < page_tokens.size(); ++ti) {
    simd::overlap_frac_many(page_tokens[ti].bbox, regions, frac);
    std::optional<std::size_t> best;
    for (std::size_t ci = 0; ci < frac.size(); ++ci) {
      if (frac[ci] < cfg.match_min_overlap) continue;
      if (!best || frac[ci] > frac[*best]) best = ci;
    }
    if (best) {
      owned[*best].push_back(ti);
    } else if (dropped) {
      dropped->push_back(page_tokens[ti].id);
    }
  }

  for (std::size_t ci = 0; ci < out.cells.size(); ++ci) {
    std::vector<TextToken> subset;
    for (std::size_t ti : owned[ci]) subset.push_back(page_tokens[ti]);
    TableCell& cell = out.cells[ci];
    cell.source_token_ids.clear();
    std::vector<std::string> parts;
    for (std::size_t k : order_tokens(subset, cfg.line_overlap)) {
      cell.source_token_ids.push_back(subset[k].id);
      parts.push_back(subset[k].text);
    }
    cell.text = text::join(parts, " ");
  }
  return out;
}

}  // namespace docforge
