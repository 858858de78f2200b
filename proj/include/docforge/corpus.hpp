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
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/backend.hpp"
#include "docforge/model.hpp"

namespace docforge::corpus {

// Glyph metrics used by every generated page: a character is half the font
// size wide and a token box is exactly one font size tall.
inline constexpr double kCharWidth = 0.5;

// Appends tokens to a page with sequential ids.
class PageBuilder {
 public:
  PageBuilder(int page_no, double width, double height);

  // One token at (left, top); its width follows from the glyph metrics.
  BoundingBox word(std::string_view text, double left, double top, double font);

  // Words separated by one space. Returns the line hull.
  BoundingBox line(const std::vector<std::string>& words, double left, double top,
                   double font);

  void proposal(const BoundingBox& bbox, DocItemLabel label, double confidence = 1.0);

  ParsedPage& page() { return page_; }
  ParsedPage take() { return std::move(page_); }

 private:
  ParsedPage page_;
  TokenId next_id_ = 0;
};

struct CorpusSpec {
  int documents = 20;
  int pages_per_document = 12;
  std::uint64_t seed = 2026;
};

// A multi-page two-column paper: running header and page-number footer,
// title and authors on page 1, section headers, paragraphs, bullet lists,
// 3-column numeric tables, and pictures with captions (as proposals).
ParsedDocument synth_document(const std::string& name, int pages, std::uint64_t seed);

// All documents of a corpus, in name order.
std::vector<ParsedDocument> synth_corpus(const CorpusSpec& spec);

// Writes synth_corpus(spec) as <name>.dpages.json files into `dir`.
std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir,
                                                const CorpusSpec& spec);

// Named single-page fixtures exercised by the tests and the README examples.
std::vector<ParsedDocument> fixtures();

}  // namespace docforge::corpus
