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

#include "docforge/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include <fmt/format.h>

#include "docforge/error.hpp"

namespace docforge::corpus {

PageBuilder::PageBuilder(int page_no, double width, double height) {
  page_.page_no = page_no;
  page_.width = width;
  page_.height = height;
}

BoundingBox PageBuilder::word(std::string_view text, double left, double top,
                              double font) {
  std::size_t chars = 0;
  for (unsigned char c : text) chars += (c & 0xC0) != 0x80;
  const BoundingBox box{left, top, left + static_cast<double>(chars) * kCharWidth * font,
                        top + font};
  page_.tokens.push_back({next_id_++, std::string(text), box, font});
  return box;
}

BoundingBox PageBuilder::line(const std::vector<std::string>& words, double left,
                              double top, double font) {
  BoundingBox hull{left, top, left, top + font};
  double x = left;
  for (const auto& w : words) {
    const BoundingBox b = word(w, x, top, font);
    hull = bbox_union(hull, b);
    x = b.right + kCharWidth * font;
  }
  return hull;
}

void PageBuilder::proposal(const BoundingBox& bbox, DocItemLabel label,
                           double confidence) {
  page_.proposals.push_back({bbox, label, confidence});
}

namespace {

constexpr double kPageW = 612;
constexpr double kPageH = 792;
constexpr double kColLeft[2] = {54, 318};
constexpr double kColW = 240;
constexpr double kBodyTop = 60;
constexpr double kBodyBottom = 720;
constexpr double kBody = 10;
constexpr double kPitch = 12;
constexpr double kBlockGap = 20;
constexpr double kCaptionFont = 9;
// Table geometry: five-character cells on a 40 pt pitch leave 15 pt gutters,
// wide enough to read as column gaps and narrow enough to stay on one line.
constexpr double kCellPitch = 40;
constexpr double kRowPitch = 16;

constexpr std::array kWords = {
    "the",      "of",       "and",     "to",        "in",       "a",
    "is",       "that",     "for",     "on",        "with",     "as",
    "by",       "this",     "are",     "we",        "from",     "which",
    "be",       "an",       "at",      "our",       "it",       "not",
    "model",    "layout",   "document", "table",    "page",     "data",
    "results",  "method",   "analysis", "text",     "region",   "structure",
    "reading",  "order",    "column",  "cell",      "token",    "corpus",
    "quality",  "baseline", "accuracy", "training", "evaluation", "approach",
    "detection", "parsing", "pipeline", "throughput", "memory", "figure",
};
constexpr std::array kCellWords = {"Alpha", "Delta", "Gamma", "Sigma",
                                   "Omega", "Theta", "Kappa", "Lambd"};
constexpr std::array kNames = {"Ada Lovelace",  "Grace Hopper", "Alan Turing",
                               "Edsger Dijkstra", "Barbara Liskov",
                               "Donald Knuth",  "Frances Allen", "John Backus"};
constexpr std::array kSections = {"Introduction", "Related Work", "Method",
                                  "Experiments", "Results", "Discussion",
                                  "Evaluation", "Conclusion"};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  int range(int lo, int hi) { return lo + static_cast<int>(pick(hi - lo + 1)); }
  std::string word() { return kWords[pick(kWords.size())]; }

  // Words filling about `fraction` of `width` at `font`.
  std::vector<std::string> words(double width, double font, double fraction) {
    std::vector<std::string> out;
    double used = 0;
    while (true) {
      std::string w = word();
      const double need = (out.empty() ? 0 : kCharWidth * font) +
                          static_cast<double>(w.size()) * kCharWidth * font;
      if (used + need > width * fraction) break;
      used += need;
      out.push_back(std::move(w));
    }
    if (out.empty()) out.push_back("data");
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 32);
  return s;
}

double paragraph(PageBuilder& b, Gen& g, double x, double y, int lines) {
  for (int i = 0; i < lines; ++i) {
    const bool last = i + 1 == lines;
    auto ws = g.words(kColW, kBody, last ? 0.4 + 0.1 * g.range(0, 5) : 1.0);
    if (i == 0) ws.front() = capitalize(ws.front());
    if (last) ws.back() += ".";
    b.line(ws, x, y + i * kPitch, kBody);
  }
  return y + lines * kPitch - (kPitch - kBody);
}

double bullet_list(PageBuilder& b, Gen& g, double x, double y, int items) {
  for (int i = 0; i < items; ++i) {
    auto ws = g.words(kColW - 20, kBody, 0.5 + 0.1 * g.range(0, 4));
    ws.insert(ws.begin(), "\xE2\x80\xA2");  // U+2022 bullet
    b.line(ws, x, y + i * kPitch, kBody);
  }
  return y + items * kPitch - (kPitch - kBody);
}

double caption_line(PageBuilder& b, Gen& g, const std::string& lead, double x,
                    double y) {
  auto ws = g.words(kColW - 60, kCaptionFont, 0.6);
  ws.insert(ws.begin(), lead);
  ws.back() += ".";
  const BoundingBox hull = b.line(ws, x, y, kCaptionFont);
  b.proposal({hull.left - 2, hull.top - 2, hull.right + 2, hull.bottom + 2},
             DocItemLabel::kCaption);
  return hull.bottom;
}

// Header row of words, then body rows of a label and two numbers.
double numeric_table(PageBuilder& b, Gen& g, double x, double y, int body_rows) {
  for (int c = 0; c < 3; ++c) {
    b.word(kCellWords[(c + g.pick(2)) % kCellWords.size()], x + c * kCellPitch, y,
           kBody);
  }
  for (int r = 1; r <= body_rows; ++r) {
    const double top = y + r * kRowPitch;
    b.word(kCellWords[g.pick(kCellWords.size())], x, top, kBody);
    for (int c = 1; c < 3; ++c) {
      b.word(fmt::format("{}.{:02}", g.range(10, 99), g.range(0, 99)),
             x + c * kCellPitch, top, kBody);
    }
  }
  return y + body_rows * kRowPitch + kBody;
}

struct Counters {
  int figure = 0;
  int table = 0;
  int section = 0;
};

double fill_column(PageBuilder& b, Gen& g, Counters& n, double x, double y,
                   double limit) {
  bool after_header = false;
  while (true) {
    const double top = y == kBodyTop || after_header ? y : y + kBlockGap;
    const int kind = static_cast<int>(g.pick(20));
    double bottom = -1;
    if (kind < 2 && !after_header) {
      if (top + 12 + 8 + 2 * kPitch > limit) break;
      const std::string title = fmt::format("{} {}", ++n.section,
                                            kSections[g.pick(kSections.size())]);
      const auto space = title.find(' ');
      b.line({title.substr(0, space), title.substr(space + 1)}, x, top, 12);
      y = top + 12 + 8;
      after_header = true;
      continue;
    } else if (kind < 5) {
      const int items = g.range(2, 4);
      if (top + items * kPitch > limit) break;
      bottom = bullet_list(b, g, x, top, items);
    } else if (kind < 8) {
      const double h = kCaptionFont + 18 + 3 * kRowPitch + kBody;
      if (top + h > limit) break;
      const double cap = caption_line(b, g, fmt::format("Table {}:", ++n.table), x, top);
      bottom = numeric_table(b, g, x, cap + 18, 3);
    } else if (kind < 10) {
      const double h = 90 + 6 + kCaptionFont;
      if (top + h > limit) break;
      const BoundingBox pic{x + 20, top, x + kColW - 20, top + 90};
      b.proposal(pic, DocItemLabel::kPicture);
      bottom = caption_line(b, g, fmt::format("Figure {}:", ++n.figure), x, pic.bottom + 6);
    } else {
      int lines = g.range(3, 7);
      while (lines >= 2 && top + lines * kPitch > limit) --lines;
      if (lines < 2) break;
      bottom = paragraph(b, g, x, top, lines);
    }
    y = bottom;
    after_header = false;
  }
  return y;
}

ParsedPage synth_page(Gen& g, Counters& n, int page_no, int page_count,
                      const std::string& topic) {
  PageBuilder b(page_no, kPageW, kPageH);
  b.line({"Synthetic", "Proceedings", "on", "Layout", "Studies"}, kColLeft[0], 24, 8);
  b.word(std::to_string(page_no), kPageW / 2 - 4, 760, 8);

  double start = kBodyTop;
  if (page_no == 1) {
    const std::vector<std::string> title = {"A", "Study", "of", topic, "for", "Document",
                                            "Conversion"};
    b.line(title, kColLeft[0], 60, 16);
    std::vector<std::string> authors;
    const std::size_t first = g.pick(kNames.size());
    for (int i = 0; i < 3; ++i) {
      const std::string name = kNames[(first + i) % kNames.size()];
      const auto space = name.find(' ');
      authors.push_back(name.substr(0, space));
      authors.push_back(name.substr(space + 1) + (i < 1 ? "," : ""));
      if (i == 1) authors.push_back("and");
    }
    b.line(authors, kColLeft[0], 88, kBody);
    b.word("Abstract", kColLeft[0], 112, 12);
    start = 132;
  }

  const bool last = page_no == page_count;
  for (int col = 0; col < 2; ++col) {
    const double x = kColLeft[col];
    const double limit = last && col == 1 ? kBodyBottom - 100 : kBodyBottom;
    double y = fill_column(b, g, n, x, start, limit);
    if (last && col == 1) {
      y += kBlockGap;
      b.word("References", x, y, 12);
      y += 12 + 8;
      for (int r = 1; r <= 3; ++r) {
        auto ws = g.words(kColW - 30, kBody, 0.7);
        ws.front() = capitalize(ws.front());
        ws.back() += ".";
        ws.insert(ws.begin(), fmt::format("[{}]", r));
        b.line(ws, x, y, kBody);
        y += kPitch;
      }
    }
  }
  return b.take();
}

}  // namespace

ParsedDocument synth_document(const std::string& name, int pages, std::uint64_t seed) {
  if (pages < 1) throw ConfigError("a document needs at least one page");
  Gen g(seed);
  Counters n;
  constexpr std::array kTopics = {"Tables", "Layouts", "Figures", "Captions"};
  const std::string topic = kTopics[g.pick(kTopics.size())];
  ParsedDocument doc;
  doc.name = name;
  for (int p = 1; p <= pages; ++p) doc.pages.push_back(synth_page(g, n, p, pages, topic));
  return doc;
}

std::vector<ParsedDocument> synth_corpus(const CorpusSpec& spec) {
  std::vector<ParsedDocument> docs;
  for (int d = 0; d < spec.documents; ++d) {
    docs.push_back(synth_document(fmt::format("paper-{:03}", d + 1),
                                  spec.pages_per_document,
                                  spec.seed * 1000003ULL + static_cast<std::uint64_t>(d)));
  }
  return docs;
}

std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir,
                                                const CorpusSpec& spec) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (const auto& doc : synth_corpus(spec)) {
    const auto path = dir / (doc.name + std::string(kInterchangeExtension));
    std::ofstream f(path, std::ios::binary);
    f << write_interchange(doc);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    out.push_back(path);
  }
  return out;
}

namespace {

ParsedDocument single(std::string name, ParsedPage page) {
  ParsedDocument doc;
  doc.name = std::move(name);
  doc.pages.push_back(std::move(page));
  return doc;
}

ParsedDocument doclaynet_title() {
  PageBuilder b(1, kPageW, kPageH);
  b.line({"KDD", "'22,", "August", "14-18,", "2022,", "Washington,", "DC,", "USA"},
         kColLeft[0], 24, 8);
  b.line({"DocLayNet:", "A", "Large", "Human-Annotated", "Dataset", "for",
          "Document-Layout", "Analysis"},
         57, 70, 14);
  b.line({"Birgit", "Pfitzmann,", "Christoph", "Auer,", "Michele", "Dolfi,", "Ahmed",
          "S.", "Nassar,", "Peter", "Staar"},
         100, 100, kBody);
  b.word("Abstract", kColLeft[0], 130, 12);
  b.line({"Accurate", "document", "layout", "analysis", "is", "a", "key",
          "requirement", "for", "high-quality"},
         kColLeft[0], 150, kBody);
  b.line({"conversion", "of", "documents", "and", "it", "is", "the", "basis", "of",
          "the", "pipeline."},
         kColLeft[0], 162, kBody);
  b.word("1", kPageW / 2 - 2, 760, 8);
  return single("doclaynet_title", b.take());
}

ParsedDocument header_footer_only() {
  PageBuilder b(1, kPageW, kPageH);
  b.line({"Running", "header", "of", "the", "journal"}, kColLeft[0], 24, 8);
  b.line({"Page", "7", "of", "12"}, kPageW / 2 - 30, 760, 8);
  return single("header_footer_only", b.take());
}

ParsedDocument two_column_table() {
  PageBuilder b(1, kPageW, kPageH);
  Gen g(17);
  double y = paragraph(b, g, kColLeft[0], kBodyTop, 5);
  const std::vector<std::vector<std::string>> grid = {
      {"Label", "Count", "Ratio"},
      {"Alpha", "12.50", "00.31"},
      {"Gamma", "48.00", "00.77"},
      {"Sigma", "07.25", "00.12"},
  };
  y += kBlockGap;
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      b.word(grid[r][c], kColLeft[0] + static_cast<double>(c) * kCellPitch,
             y + static_cast<double>(r) * kRowPitch, kBody);
    }
  }
  y += 3 * kRowPitch + kBody + kBlockGap;
  paragraph(b, g, kColLeft[0], y, 4);
  paragraph(b, g, kColLeft[1], kBodyTop, 6);
  paragraph(b, g, kColLeft[1], kBodyTop + 6 * kPitch + kBlockGap, 5);
  return single("two_column_table", b.take());
}

// Paragraph, table, paragraph down a single full-width column.
ParsedDocument paragraph_table_paragraph() {
  PageBuilder b(1, kPageW, kPageH);
  b.line({"The", "first", "paragraph", "introduces", "the", "results", "that",
          "are", "listed", "in", "the", "table", "below."},
         kColLeft[0], 80, kBody);
  b.line({"It", "spans", "two", "lines", "of", "the", "page."}, kColLeft[0],
         80 + kPitch, kBody);
  const std::vector<std::vector<std::string>> grid = {
      {"Model", "Score", "Speed"},
      {"Small", "71.20", "09.50"},
      {"Large", "78.40", "03.10"},
  };
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      b.word(grid[r][c], kColLeft[0] + static_cast<double>(c) * kCellPitch,
             130 + static_cast<double>(r) * kRowPitch, kBody);
    }
  }
  b.line({"The", "second", "paragraph", "discusses", "the", "table", "and", "it",
          "ends", "the", "page."},
         kColLeft[0], 200, kBody);
  return single("paragraph_table_paragraph", b.take());
}

// Two spanning group headers over a sub-header row of metrics.
ParsedDocument spanning_header_table() {
  PageBuilder b(1, kPageW, kPageH);
  b.line({"Results", "per", "split", "are", "reported", "for", "both", "models",
          "in", "the", "table."},
         kColLeft[0], 80, kBody);
  const double x = kColLeft[0];
  const double y = 120;
  Gen g(5);
  caption_line(b, g, "Table 1:", x, y);
  const double t = y + kCaptionFont + 18;
  b.word("Baseline-Only", x + kCellPitch, t, kBody);
  b.word("Proposed-Full", x + 3 * kCellPitch, t, kBody);
  const std::vector<std::vector<std::string>> rows = {
      {"Split", "Top-1", "Top-5", "Top-1", "Top-5"},
      {"Train", "0.912", "0.981", "0.934", "0.990"},
      {"Devel", "0.874", "0.962", "0.901", "0.975"},
      {"Final", "0.869", "0.958", "0.897", "0.971"},
  };
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      b.word(rows[r][c], x + static_cast<double>(c) * kCellPitch,
             t + static_cast<double>(r + 1) * kRowPitch, kBody);
    }
  }
  return single("spanning_header_table", b.take());
}

}  // namespace

std::vector<ParsedDocument> fixtures() {
  std::vector<ParsedDocument> out;
  out.push_back(doclaynet_title());
  out.push_back(header_footer_only());
  out.push_back(two_column_table());
  out.push_back(paragraph_table_paragraph());
  out.push_back(spanning_header_table());
  return out;
}

}  // namespace docforge::corpus
