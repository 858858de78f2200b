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

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "docforge/model.hpp"

namespace docforge {

// Every threshold used by the heuristic detector and its post-processing.
struct LayoutConfig {
  // Tokens share a line when their vertical overlap reaches this fraction of
  // the shorter height.
  double line_overlap = 0.5;
  // A horizontal gap wider than this fraction of the page width ends a line
  // (column gutters).
  double line_split_gap = 0.03;
  // Lines join a block when the vertical gap is at most this many median
  // line heights...
  double block_gap_factor = 1.5;
  // ...and their horizontal overlap covers this fraction of the narrower one.
  double block_min_hoverlap = 0.3;
  double header_band = 0.075;
  double footer_band = 0.925;
  double section_font_ratio = 1.15;
  int section_max_lines = 2;
  // In-line gaps at least this many median character widths wide are
  // candidate table column gaps.
  double table_gap_chars = 2.0;
  int table_min_gaps = 2;
  int table_min_lines = 2;

  double nms_iou = 0.5;
  double nms_containment = 0.9;
  double assign_min_overlap = 0.5;
};

// Labelled region with the page tokens it owns.
struct LayoutCluster {
  LayoutProposal proposal;
  // Ordered by line (top), then left.
  std::vector<TokenId> token_ids;
  int cluster_id = 0;

  friend bool operator==(const LayoutCluster&, const LayoutCluster&) = default;
};

// Tokens on one visual line, as indices into the input span, left to right.
struct TextLine {
  BoundingBox bbox;
  std::vector<std::size_t> members;
};

// Greedy line grouping. Tokens join the first line whose vertical overlap
// reaches `overlap` of the shorter height and whose horizontal distance is at
// most `max_gap`. Lines come back sorted by (top, left).
std::vector<TextLine> group_lines(
    std::span<const TextToken> tokens, double overlap,
    double max_gap = std::numeric_limits<double>::infinity());

// Indices of `tokens` in reading order: by line (top), then left.
std::vector<std::size_t> order_tokens(std::span<const TextToken> tokens,
                                      double overlap);

// Heuristic region proposals for one page; all carry confidence 1.0.
std::vector<LayoutProposal> detect_layout(const ParsedPage& page,
                                          const LayoutConfig& cfg = {});

// Greedy overlap suppression. Priority is (confidence desc, area desc, top,
// left); a proposal survives iff its IoU with every kept one stays below
// cfg.nms_iou and it is not contained (>= cfg.nms_containment) in a kept
// proposal of another label. Survivors keep their input order.
std::vector<LayoutProposal> suppress_overlaps(
    std::span<const LayoutProposal> props, const LayoutConfig& cfg = {});

// Give each token to the proposal covering most of it (at least
// cfg.assign_min_overlap; ties go to the smaller proposal, then the lower
// id). Leftover tokens become synthetic Text clusters, one per connected
// line group. Cluster ids follow proposal order, synthetic ones after.
// `page_width` > 0 enables gutter splitting for the synthetic groups.
std::vector<LayoutCluster> assign_tokens(std::span<const LayoutProposal> props,
                                         std::span<const TextToken> tokens,
                                         const LayoutConfig& cfg = {},
                                         double page_width = 0);

// detect_layout + supplied proposals -> suppress_overlaps -> assign_tokens.
std::vector<LayoutCluster> analyze_layout(const ParsedPage& page,
                                          const LayoutConfig& cfg = {});

}  // namespace docforge
