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

#include "docforge/assemble.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "docforge/error.hpp"
#include "text_util.hpp"

namespace docforge {

namespace {

struct Gap {
  double width = 0;
  double cut = 0;
  bool vertical = false;  // true: column separator
};

// Widest whitespace gap between the merged hulls of `members` along one axis.
std::optional<Gap> widest_gap(std::span<const LayoutCluster> clusters,
                              const std::vector<std::size_t>& members,
                              bool vertical, double min_width) {
  std::vector<std::pair<double, double>> spans;
  spans.reserve(members.size());
  for (std::size_t m : members) {
    const auto& b = clusters[m].proposal.bbox;
    spans.emplace_back(vertical ? b.left : b.top, vertical ? b.right : b.bottom);
  }
  std::sort(spans.begin(), spans.end());
  std::optional<Gap> best;
  double hull_hi = spans.front().second;
  for (std::size_t i = 1; i < spans.size(); ++i) {
    const double gap = spans[i].first - hull_hi;
    if (gap > min_width && (!best || gap > best->width)) {
      best = Gap{gap, hull_hi + 0.5 * gap, vertical};
    }
    hull_hi = std::max(hull_hi, spans[i].second);
  }
  return best;
}

void xy_cut(std::span<const LayoutCluster> clusters,
            std::vector<std::size_t> members, double column_gap,
            std::vector<int>& out) {
  if (members.size() <= 1) {
    for (std::size_t m : members) out.push_back(clusters[m].cluster_id);
    return;
  }
  const auto cols = widest_gap(clusters, members, true, column_gap);
  const auto rows = widest_gap(clusters, members, false, 0.0);
  std::optional<Gap> cut;
  if (cols && rows) {
    cut = cols->width > rows->width ? cols : rows;
  } else {
    cut = cols ? cols : rows;
  }
  if (!cut) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      const auto& ba = clusters[a].proposal.bbox;
      const auto& bb = clusters[b].proposal.bbox;
      if (ba.top != bb.top) return ba.top < bb.top;
      if (ba.left != bb.left) return ba.left < bb.left;
      return clusters[a].cluster_id < clusters[b].cluster_id;
    });
    for (std::size_t m : members) out.push_back(clusters[m].cluster_id);
    return;
  }
  std::vector<std::size_t> first, second;
  for (std::size_t m : members) {
    const auto& b = clusters[m].proposal.bbox;
    const double hi = cut->vertical ? b.right : b.bottom;
    (hi < cut->cut ? first : second).push_back(m);
  }
  xy_cut(clusters, std::move(first), column_gap, out);
  xy_cut(clusters, std::move(second), column_gap, out);
}

const BoundingBox& item_box(const DocItem& item) { return item.prov.front().bbox; }

struct StopwordList {
  const char* code;
  std::vector<std::string_view> words;
};

const std::array<StopwordList, 5>& stopword_lists() {
  static const std::array<StopwordList, 5> lists = {{
      {"en",
       {"the", "and", "of", "to", "in", "is", "that", "for", "it", "with",
        "as", "was", "on", "are", "be", "this", "by", "from", "at", "or",
        "which", "an", "have", "not", "has", "were", "their", "these", "can",
        "we", "but", "been", "also", "its", "they", "than", "more"}},
      {"de",
       {"der", "die", "das", "und", "ist", "nicht", "mit", "den", "von", "zu",
        "sich", "des", "auf", "für", "ein", "eine", "dem", "im", "auch", "es",
        "wird", "werden", "sind", "als", "bei", "oder", "aus", "nach", "wie",
        "einer", "sie", "wir", "durch", "über", "noch", "kann"}},
      {"fr",
       {"le", "la", "les", "et", "des", "est", "une", "du", "dans", "que",
        "pour", "qui", "pas", "sur", "au", "avec", "ce", "il", "sont", "par",
        "plus", "ne", "aux", "cette", "nous", "mais", "ou", "été", "leur",
        "ses", "ces", "elle", "entre", "être"}},
      {"es",
       {"el", "los", "las", "y", "del", "que", "en", "un", "una", "es", "por",
        "con", "para", "se", "al", "lo", "como", "más", "pero", "sus", "su",
        "le", "ya", "o", "este", "esta", "son", "entre", "cuando", "muy",
        "sin", "sobre", "también", "hay", "fue"}},
      {"it",
       {"il", "di", "che", "e", "la", "per", "un", "una", "sono", "non",
        "con", "del", "della", "le", "gli", "si", "da", "nel", "alla", "dei",
        "come", "anche", "più", "ma", "questo", "questa", "ha", "essere",
        "tra", "delle", "sul", "dal", "nella", "degli"}},
  }};
  return lists;
}

// Lowercased words; bytes >= 0x80 count as letters so UTF-8 words survive.
std::vector<std::string> words_of(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : s) {
    const bool letter = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
    if (letter) {
      cur.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool is_name_part(std::string_view part) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < part.size()) {
    while (i < part.size() && part[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < part.size() && part[i] != ' ') ++i;
    if (i > start) tokens.push_back(part.substr(start, i - start));
  }
  if (tokens.size() < 2 || tokens.size() > 4) return false;
  for (auto tok : tokens) {
    if (!(tok[0] >= 'A' && tok[0] <= 'Z')) return false;
    for (unsigned char c : tok) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      c == '.' || c == '-' || c == '\'' || c >= 0x80;
      if (!ok) return false;
    }
  }
  return true;
}

// Split an author line on commas, semicolons, ampersands and " and ".
std::vector<std::string> split_names(std::string_view line) {
  std::string s(line);
  for (std::string_view sep : {" and ", " & "}) {
    for (std::size_t pos; (pos = s.find(sep)) != std::string::npos;) {
      s.replace(pos, sep.size(), ",");
    }
  }
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',' || s[i] == ';') {
      const auto part = text::trim(std::string_view(s).substr(start, i - start));
      if (!part.empty()) parts.emplace_back(part);
      start = i + 1;
    }
  }
  return parts;
}

struct AuthorScan {
  std::vector<std::size_t> items;
  std::vector<std::string> names;
};

AuthorScan scan_authors(const Document& doc) {
  AuthorScan scan;
  std::optional<std::size_t> title;
  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    const auto& item = doc.items[i];
    if (item.label == DocItemLabel::kTitle && item.prov.front().page_no == 1) {
      title = i;
      break;
    }
  }
  if (!title) return scan;
  for (std::size_t i = *title + 1; i < doc.items.size(); ++i) {
    const auto& item = doc.items[i];
    if (item.prov.front().page_no != 1) break;
    if (item.label == DocItemLabel::kSectionHeader) break;
    if (item.label != DocItemLabel::kText) continue;
    const auto trimmed = text::trim(item.text);
    if (text::ascii_lower(trimmed.substr(0, 8)) == "abstract") break;
    const auto parts = split_names(trimmed);
    if (parts.empty() || !std::all_of(parts.begin(), parts.end(), is_name_part)) {
      continue;
    }
    scan.items.push_back(i);
    scan.names.insert(scan.names.end(), parts.begin(), parts.end());
  }
  return scan;
}

std::string heading_key(std::string_view heading) {
  auto s = text::trim(heading);
  while (!s.empty() && ((s.front() >= '0' && s.front() <= '9') ||
                        s.front() == '.' || s.front() == ' ')) {
    s.remove_prefix(1);
  }
  return text::ascii_lower(s);
}

}  // namespace

std::vector<int> infer_reading_order(std::span<const LayoutCluster> clusters,
                                     double page_width, double column_gap) {
  std::vector<std::size_t> headers, footers, body;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    switch (clusters[i].proposal.label) {
      case DocItemLabel::kPageHeader:
        headers.push_back(i);
        break;
      case DocItemLabel::kPageFooter:
        footers.push_back(i);
        break;
      default:
        body.push_back(i);
    }
  }
  auto by_position = [&](std::size_t a, std::size_t b) {
    const auto& ba = clusters[a].proposal.bbox;
    const auto& bb = clusters[b].proposal.bbox;
    if (ba.top != bb.top) return ba.top < bb.top;
    if (ba.left != bb.left) return ba.left < bb.left;
    return clusters[a].cluster_id < clusters[b].cluster_id;
  };
  std::sort(headers.begin(), headers.end(), by_position);
  std::sort(footers.begin(), footers.end(), by_position);

  std::vector<int> order;
  order.reserve(clusters.size());
  for (std::size_t h : headers) order.push_back(clusters[h].cluster_id);
  xy_cut(clusters, std::move(body), column_gap * page_width, order);
  for (std::size_t f : footers) order.push_back(clusters[f].cluster_id);
  return order;
}

std::vector<std::optional<std::size_t>> match_captions(
    std::span<const DocItem> items, double search_heights,
    std::vector<std::string>* warnings) {
  std::vector<std::optional<std::size_t>> links(items.size());
  std::vector<bool> claimed(items.size(), false);
  for (std::size_t ci = 0; ci < items.size(); ++ci) {
    if (items[ci].label != DocItemLabel::kCaption) continue;
    const BoundingBox& cap = item_box(items[ci]);
    const double reach = search_heights * cap.height();
    std::optional<std::size_t> above, below;
    double above_d = 0, below_d = 0;
    for (std::size_t ti = 0; ti < items.size(); ++ti) {
      const auto label = items[ti].label;
      if (claimed[ti] ||
          (label != DocItemLabel::kPicture && label != DocItemLabel::kTable)) {
        continue;
      }
      const BoundingBox& t = item_box(items[ti]);
      if (interval_overlap(cap.left, cap.right, t.left, t.right) <= 0) continue;
      if (t.bottom <= cap.top) {
        const double d = cap.top - t.bottom;
        if (d <= reach && (!above || d < above_d)) {
          above = ti;
          above_d = d;
        }
      } else if (t.top >= cap.bottom) {
        const double d = t.top - cap.bottom;
        if (d <= reach && (!below || d < below_d)) {
          below = ti;
          below_d = d;
        }
      }
    }
    const auto target = above ? above : below;
    if (target) {
      links[ci] = target;
      claimed[*target] = true;
    } else if (warnings) {
      warnings->push_back(
          fmt::format("page {}: caption \"{}\" has no figure or table nearby",
                      items[ci].prov.front().page_no,
                      items[ci].text.substr(0, 40)));
    }
  }
  return links;
}

std::vector<std::pair<std::string, int>> stopword_hits(std::string_view sample) {
  std::vector<std::pair<std::string, int>> hits;
  const auto words = words_of(sample);
  for (const auto& list : stopword_lists()) {
    const std::unordered_set<std::string_view> set(list.words.begin(),
                                                   list.words.end());
    int n = 0;
    for (const auto& w : words) n += set.count(w) ? 1 : 0;
    hits.emplace_back(list.code, n);
  }
  return hits;
}

std::optional<std::string> detect_language(std::string_view sample) {
  auto hits = stopword_hits(sample);
  std::stable_sort(hits.begin(), hits.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  const int best = hits[0].second;
  const int runner_up = hits[1].second;
  if (best >= 10 && best >= 2 * runner_up) return hits[0].first;
  return std::nullopt;
}

std::string language_sample(const Document& doc) {
  constexpr std::size_t kLimit = 5000;
  std::string sample;
  for (const auto& item : doc.items) {
    if (item.label != DocItemLabel::kText && item.label != DocItemLabel::kListItem) {
      continue;
    }
    if (!sample.empty()) sample += ' ';
    sample += item.text;
    if (sample.size() >= kLimit) break;
  }
  if (sample.size() > kLimit) {
    std::size_t cut = kLimit;
    // Do not split a UTF-8 sequence.
    while (cut > 0 && (static_cast<unsigned char>(sample[cut]) & 0xC0) == 0x80) {
      --cut;
    }
    sample.resize(cut);
  }
  return sample;
}

DocumentMetadata extract_metadata(const Document& doc) {
  DocumentMetadata meta;
  for (const auto& item : doc.items) {
    if (item.label == DocItemLabel::kTitle && item.prov.front().page_no == 1) {
      meta.title = item.text;
      break;
    }
  }
  meta.authors = scan_authors(doc).names;
  return meta;
}

std::vector<std::size_t> author_item_indices(const Document& doc) {
  return scan_authors(doc).items;
}

void tag_references(Document& doc) {
  bool in_refs = false;
  for (auto& item : doc.items) {
    if (item.label == DocItemLabel::kSectionHeader) {
      const auto key = heading_key(item.text);
      in_refs = key == "references" || key == "bibliography";
    } else if (item.label == DocItemLabel::kText ||
               item.label == DocItemLabel::kListItem) {
      item.reference_entry = in_refs;
    }
  }
}

Document assemble_document(std::string name, std::span<const PageState> pages,
                           const AssembleOptions& opts,
                           std::vector<std::string>& warnings) {
  std::vector<const PageState*> sorted;
  for (const auto& p : pages) sorted.push_back(&p);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const PageState* a, const PageState* b) {
                     return a->page_no() < b->page_no();
                   });

  Document doc;
  doc.name = std::move(name);
  std::vector<ParsedPage> parsed_pages;
  for (const PageState* state : sorted) {
    const ParsedPage& page = *state->parsed;
    parsed_pages.push_back(page);
    doc.pages.push_back({page.page_no, page.width, page.height});
    if (!state->predictions.layout) continue;

    std::vector<LayoutCluster> clusters;
    for (const auto& c : *state->predictions.layout) {
      const auto label = c.proposal.label;
      if (c.token_ids.empty() && label != DocItemLabel::kPicture &&
          label != DocItemLabel::kTable) {
        continue;
      }
      clusters.push_back(c);
    }
    std::unordered_map<int, const LayoutCluster*> by_id;
    for (const auto& c : clusters) by_id[c.cluster_id] = &c;
    std::unordered_map<TokenId, const TextToken*> tokens;
    for (const auto& t : page.tokens) tokens[t.id] = &t;

    std::vector<DocItem> page_items;
    for (int id : infer_reading_order(clusters, page.width, opts.column_gap)) {
      const LayoutCluster& c = *by_id.at(id);
      DocItem item;
      item.label = c.proposal.label;
      item.prov.push_back({page.page_no, c.proposal.bbox, c.token_ids});
      if (item.label != DocItemLabel::kPicture) {
        std::vector<std::string> parts;
        for (TokenId tid : c.token_ids) parts.push_back(tokens.at(tid)->text);
        item.text = text::join(parts, " ");
      }
      if (item.label == DocItemLabel::kTable) {
        const auto& tables = state->predictions.tables;
        if (tables && tables->count(id)) {
          item.table = tables->at(id);
        } else if (!opts.table_structure_enabled) {
          item.label = DocItemLabel::kText;
        } else {
          item.table = TableStructure{1, 1, {}};
          warnings.push_back(fmt::format(
              "page {}: table without structure prediction", page.page_no));
        }
      }
      page_items.push_back(std::move(item));
    }

    const std::size_t offset = doc.items.size();
    const auto links =
        match_captions(page_items, opts.caption_search_heights, &warnings);
    for (std::size_t i = 0; i < page_items.size(); ++i) {
      if (links[i]) page_items[i].caption_of = offset + *links[i];
      doc.items.push_back(std::move(page_items[i]));
    }
  }

  const auto meta = extract_metadata(doc);
  doc.metadata.title = meta.title;
  doc.metadata.authors = meta.authors;
  doc.metadata.language = detect_language(language_sample(doc));
  tag_references(doc);

  const auto report = validate_document(doc, &parsed_pages);
  if (!report.empty()) {
    const auto& v = report.front();
    throw AssemblyError(fmt::format(
        "assembled document is invalid ({} violations; first: {}{})",
        report.size(),
        v.item_index ? fmt::format("item {}: ", *v.item_index) : std::string(),
        v.message));
  }
  return doc;
}

}  // namespace docforge
