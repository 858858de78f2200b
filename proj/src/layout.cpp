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

#include "docforge/layout.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "docforge/kernels.hpp"
#include "text_util.hpp"

namespace docforge {

namespace {

bool same_row(const BoundingBox& a, const BoundingBox& b, double overlap) {
  const double shorter = std::min(a.height(), b.height());
  if (shorter <= 0) {
    const BoundingBox& flat = a.height() <= b.height() ? a : b;
    const BoundingBox& other = a.height() <= b.height() ? b : a;
    const double cy = flat.center_y();
    return cy >= other.top && cy <= other.bottom;
  }
  const double ov = interval_overlap(a.top, a.bottom, b.top, b.bottom);
  return ov > 0 && ov >= overlap * shorter;
}

double horizontal_distance(const BoundingBox& a, const BoundingBox& b) {
  return std::max(0.0, std::max(a.left - b.right, b.left - a.right));
}

struct Block {
  BoundingBox bbox;
  std::vector<std::size_t> lines;
  double font = 0;
};

// Join consecutive lines into blocks. With `split_on_style`, a list opener
// always starts a new block and lines only join blocks of similar font size.
std::vector<Block> build_blocks(const std::vector<TextLine>& lines,
                                const std::vector<double>& line_fonts,
                                const std::vector<bool>& line_opens_list,
                                const LayoutConfig& cfg, bool split_on_style) {
  std::vector<double> heights;
  heights.reserve(lines.size());
  for (const auto& l : lines) heights.push_back(l.bbox.height());
  const double max_gap = cfg.block_gap_factor * text::median(heights);

  std::vector<Block> blocks;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const BoundingBox& lb = lines[li].bbox;
    std::optional<std::size_t> best;
    double best_gap = 0;
    if (!(split_on_style && line_opens_list[li])) {
      for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const Block& b = blocks[bi];
        const double gap = lb.top - b.bbox.bottom;
        if (gap > max_gap) continue;
        const double hov =
            interval_overlap(lb.left, lb.right, b.bbox.left, b.bbox.right);
        const double narrower = std::min(lb.width(), b.bbox.width());
        if (hov <= 0 || hov < cfg.block_min_hoverlap * narrower) continue;
        if (split_on_style) {
          const double hi = std::max(line_fonts[li], b.font);
          const double lo = std::min(line_fonts[li], b.font);
          if (lo > 0 && hi >= cfg.section_font_ratio * lo) continue;
        }
        if (!best || gap < best_gap) {
          best = bi;
          best_gap = gap;
        }
      }
    }
    if (best) {
      Block& b = blocks[*best];
      b.bbox = bbox_union(b.bbox, lb);
      b.lines.push_back(li);
      b.font = std::max(b.font, line_fonts[li]);
    } else {
      blocks.push_back({lb, {li}, line_fonts[li]});
    }
  }
  return blocks;
}

bool looks_like_table(const Block& block, const std::vector<TextLine>& lines,
                      std::span<const TextToken> tokens, double gap_threshold,
                      const LayoutConfig& cfg) {
  if (static_cast<int>(block.lines.size()) < cfg.table_min_lines) return false;
  struct Gap {
    double lo, hi;
    std::size_t line;
  };
  std::vector<Gap> gaps;
  for (std::size_t li : block.lines) {
    const auto& m = lines[li].members;
    for (std::size_t k = 1; k < m.size(); ++k) {
      const double lo = tokens[m[k - 1]].bbox.right;
      const double hi = tokens[m[k]].bbox.left;
      if (hi - lo >= gap_threshold) gaps.push_back({lo, hi, li});
    }
  }
  std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  int persistent = 0;
  std::size_t i = 0;
  while (i < gaps.size()) {
    double hi = gaps[i].hi;
    std::vector<std::size_t> seen{gaps[i].line};
    std::size_t j = i + 1;
    while (j < gaps.size() && gaps[j].lo < hi) {
      hi = std::max(hi, gaps[j].hi);
      seen.push_back(gaps[j].line);
      ++j;
    }
    std::sort(seen.begin(), seen.end());
    const auto distinct = std::unique(seen.begin(), seen.end()) - seen.begin();
    if (distinct >= cfg.table_min_lines) ++persistent;
    i = j;
  }
  return persistent >= cfg.table_min_gaps;
}

// Token ids ordered by line (top) then left.
std::vector<TokenId> reading_ordered_ids(std::span<const TextToken> tokens,
                                         const std::vector<std::size_t>& idx,
                                         double overlap) {
  std::vector<TextToken> subset;
  subset.reserve(idx.size());
  for (std::size_t i : idx) subset.push_back(tokens[i]);
  std::vector<TokenId> ids;
  ids.reserve(idx.size());
  for (const auto& line : group_lines(subset, overlap)) {
    for (std::size_t m : line.members) ids.push_back(subset[m].id);
  }
  return ids;
}

}  // namespace

std::vector<std::size_t> order_tokens(std::span<const TextToken> tokens,
                                      double overlap) {
  std::vector<std::size_t> out;
  out.reserve(tokens.size());
  for (const auto& line : group_lines(tokens, overlap)) {
    out.insert(out.end(), line.members.begin(), line.members.end());
  }
  return out;
}

std::vector<TextLine> group_lines(std::span<const TextToken> tokens,
                                  double overlap, double max_gap) {
  std::vector<std::size_t> order(tokens.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ta = tokens[a];
    const auto& tb = tokens[b];
    if (ta.bbox.top != tb.bbox.top) return ta.bbox.top < tb.bbox.top;
    if (ta.bbox.left != tb.bbox.left) return ta.bbox.left < tb.bbox.left;
    return ta.id < tb.id;
  });

  std::vector<TextLine> lines;
  for (std::size_t idx : order) {
    const BoundingBox& b = tokens[idx].bbox;
    TextLine* target = nullptr;
    for (auto& line : lines) {
      if (same_row(b, line.bbox, overlap) &&
          horizontal_distance(b, line.bbox) <= max_gap) {
        target = &line;
        break;
      }
    }
    if (target) {
      target->bbox = bbox_union(target->bbox, b);
      target->members.push_back(idx);
    } else {
      lines.push_back({b, {idx}});
    }
  }
  for (auto& line : lines) {
    std::sort(line.members.begin(), line.members.end(),
              [&](std::size_t a, std::size_t b) {
                const auto& ta = tokens[a];
                const auto& tb = tokens[b];
                if (ta.bbox.left != tb.bbox.left) {
                  return ta.bbox.left < tb.bbox.left;
                }
                return ta.id < tb.id;
              });
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const TextLine& a, const TextLine& b) {
                     if (a.bbox.top != b.bbox.top) return a.bbox.top < b.bbox.top;
                     return a.bbox.left < b.bbox.left;
                   });
  return lines;
}

std::vector<LayoutProposal> detect_layout(const ParsedPage& page,
                                          const LayoutConfig& cfg) {
  if (page.tokens.empty()) return {};
  const std::span<const TextToken> tokens = page.tokens;
  const auto lines =
      group_lines(tokens, cfg.line_overlap, cfg.line_split_gap * page.width);

  std::vector<double> fonts;
  std::vector<double> char_widths;
  double page_max_font = 0;
  for (const auto& t : tokens) {
    const double f = t.effective_font_size();
    fonts.push_back(f);
    page_max_font = std::max(page_max_font, f);
    const auto len = text::utf8_length(text::trim(t.text));
    if (len > 0) char_widths.push_back(t.bbox.width() / static_cast<double>(len));
  }
  const double page_median_font = text::median(fonts);
  const double gap_threshold = cfg.table_gap_chars * text::median(char_widths);

  std::vector<double> line_fonts;
  std::vector<bool> line_opens_list;
  for (const auto& line : lines) {
    double f = 0;
    for (std::size_t m : line.members) {
      f = std::max(f, tokens[m].effective_font_size());
    }
    line_fonts.push_back(f);
    line_opens_list.push_back(
        text::starts_list_item(tokens[line.members.front()].text));
  }

  const auto blocks =
      build_blocks(lines, line_fonts, line_opens_list, cfg, /*split_on_style=*/true);

  std::vector<LayoutProposal> out;
  out.reserve(blocks.size());
  bool title_taken = false;
  for (const auto& block : blocks) {
    DocItemLabel label = DocItemLabel::kText;
    const bool is_title =
        page.page_no == 1 && !title_taken && block.font >= page_max_font &&
        (block.font > page_median_font || blocks.size() == 1);
    if (is_title) {
      label = DocItemLabel::kTitle;
      title_taken = true;
    } else if (block.bbox.bottom <= cfg.header_band * page.height) {
      label = DocItemLabel::kPageHeader;
    } else if (block.bbox.top >= cfg.footer_band * page.height) {
      label = DocItemLabel::kPageFooter;
    } else if (block.font >= cfg.section_font_ratio * page_median_font &&
               static_cast<int>(block.lines.size()) <= cfg.section_max_lines) {
      label = DocItemLabel::kSectionHeader;
    } else if (line_opens_list[block.lines.front()]) {
      label = DocItemLabel::kListItem;
    } else if (looks_like_table(block, lines, tokens, gap_threshold, cfg)) {
      label = DocItemLabel::kTable;
    }
    out.push_back({block.bbox, label, 1.0});
  }
  return out;
}

std::vector<LayoutProposal> suppress_overlaps(
    std::span<const LayoutProposal> props, const LayoutConfig& cfg) {
  std::vector<std::size_t> order(props.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> areas(props.size());
  for (std::size_t i = 0; i < props.size(); ++i) {
    areas[i] = bbox_area(props[i].bbox);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = props[a];
    const auto& pb = props[b];
    if (pa.confidence != pb.confidence) return pa.confidence > pb.confidence;
    if (areas[a] != areas[b]) return areas[a] > areas[b];
    if (pa.bbox.top != pb.bbox.top) return pa.bbox.top < pb.bbox.top;
    return pa.bbox.left < pb.bbox.left;
  });

  simd::BoxColumns kept_boxes;
  std::vector<std::size_t> kept;
  std::vector<double> iou(props.size());
  std::vector<double> contained(props.size());
  for (std::size_t idx : order) {
    const auto& p = props[idx];
    simd::iou_many(p.bbox, kept_boxes, iou);
    simd::overlap_frac_many(p.bbox, kept_boxes, contained);
    bool keep = true;
    for (std::size_t k = 0; k < kept.size() && keep; ++k) {
      if (iou[k] >= cfg.nms_iou) keep = false;
      if (contained[k] >= cfg.nms_containment &&
          props[kept[k]].label != p.label) {
        keep = false;
      }
    }
    if (keep) {
      kept.push_back(idx);
      kept_boxes.push_back(p.bbox);
    }
  }
  std::sort(kept.begin(), kept.end());
  std::vector<LayoutProposal> out;
  out.reserve(kept.size());
  for (std::size_t idx : kept) out.push_back(props[idx]);
  return out;
}

std::vector<LayoutCluster> assign_tokens(std::span<const LayoutProposal> props,
                                         std::span<const TextToken> tokens,
                                         const LayoutConfig& cfg,
                                         double page_width) {
  std::vector<BoundingBox> boxes;
  std::vector<double> areas;
  for (const auto& p : props) {
    boxes.push_back(p.bbox);
    areas.push_back(bbox_area(p.bbox));
  }
  const simd::BoxColumns columns(boxes);

  std::vector<std::vector<std::size_t>> members(props.size());
  std::vector<std::size_t> leftover;
  std::vector<double> frac(props.size());
  for (std::size_t ti = 0; ti < tokens.size(); ++ti) {
    simd::overlap_frac_many(tokens[ti].bbox, columns, frac);
    std::optional<std::size_t> best;
    for (std::size_t pi = 0; pi < props.size(); ++pi) {
      if (frac[pi] < cfg.assign_min_overlap) continue;
      if (!best || frac[pi] > frac[*best] ||
          (frac[pi] == frac[*best] && areas[pi] < areas[*best])) {
        best = pi;
      }
    }
    if (best) {
      members[*best].push_back(ti);
    } else {
      leftover.push_back(ti);
    }
  }

  std::vector<LayoutCluster> clusters;
  clusters.reserve(props.size());
  for (std::size_t pi = 0; pi < props.size(); ++pi) {
    clusters.push_back({props[pi],
                        reading_ordered_ids(tokens, members[pi], cfg.line_overlap),
                        static_cast<int>(pi)});
  }

  if (!leftover.empty()) {
    std::vector<TextToken> rest;
    rest.reserve(leftover.size());
    for (std::size_t ti : leftover) rest.push_back(tokens[ti]);
    const double max_gap = page_width > 0
                               ? cfg.line_split_gap * page_width
                               : std::numeric_limits<double>::infinity();
    const auto lines = group_lines(rest, cfg.line_overlap, max_gap);
    const std::vector<double> no_fonts(lines.size(), 0.0);
    const std::vector<bool> no_lists(lines.size(), false);
    const auto blocks =
        build_blocks(lines, no_fonts, no_lists, cfg, /*split_on_style=*/false);
    for (const auto& block : blocks) {
      std::vector<std::size_t> idx;
      for (std::size_t li : block.lines) {
        idx.insert(idx.end(), lines[li].members.begin(), lines[li].members.end());
      }
      LayoutCluster c;
      c.proposal = {block.bbox, DocItemLabel::kText, 1.0};
      c.token_ids = reading_ordered_ids(rest, idx, cfg.line_overlap);
      c.cluster_id = static_cast<int>(clusters.size());
      clusters.push_back(std::move(c));
    }
  }
  return clusters;
}

std::vector<LayoutCluster> analyze_layout(const ParsedPage& page,
                                          const LayoutConfig& cfg) {
  auto props = detect_layout(page, cfg);
  props.insert(props.end(), page.proposals.begin(), page.proposals.end());
  const auto kept = suppress_overlaps(props, cfg);
  return assign_tokens(kept, page.tokens, cfg, page.width);
}

}  // namespace docforge
