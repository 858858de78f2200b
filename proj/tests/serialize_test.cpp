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

#include "docforge/serialize.hpp"

#include <gtest/gtest.h>

#include "docforge/error.hpp"
#include "oracles.hpp"

namespace docforge {
namespace {

DocItem item(DocItemLabel label, std::string text, double top = 0) {
  DocItem i;
  i.label = label;
  i.text = label == DocItemLabel::kPicture ? "" : std::move(text);
  i.prov.push_back({1, {10, top, 100, top + 10}, {}});
  return i;
}

TableCell cell(int r, int c, std::string text, CellRole role = CellRole::kBody, int rs = 1, int cs = 1) {
  TableCell out;
  out.start_row = r;
  out.start_col = c;
  out.row_span = rs;
  out.col_span = cs;
  out.role = role;
  out.text = std::move(text);
  return out;
}

Document one_page() {
  Document d;
  d.name = "doc";
  d.pages = {{1, 612, 792}};
  return d;
}

TEST(ToJson, EmptyDocumentIsFixed) {
  Document d;
  d.name = "e";
  EXPECT_EQ(to_json(d),
            "{\n"
            "  \"schema_tag\": \"docforge-doc\",\n"
            "  \"version\": 1,\n"
            "  \"name\": \"e\",\n"
            "  \"metadata\": {\n"
            "    \"title\": null,\n"
            "    \"authors\": [],\n"
            "    \"language\": null\n"
            "  },\n"
            "  \"pages\": [],\n"
            "  \"items\": []\n"
            "}\n");
}

TEST(ToJson, RefusesInvalidDocument) {
  Document d = one_page();
  d.items.push_back(item(DocItemLabel::kTable, "no structure"));
  EXPECT_THROW(to_json(d), SerializeError);
}

TEST(ToJson, SpanSurvives) {
  Document d = one_page();
  auto t = item(DocItemLabel::kTable, "");
  t.table = TableStructure{2, 3, {cell(0, 0, "wide", CellRole::kColumnHeader, 1, 3), cell(1, 0, "a"),
                                  cell(1, 1, "b"), cell(1, 2, "c")}};
  d.items.push_back(t);
  const std::string json = to_json(d);
  EXPECT_NE(json.find("\"col_span\": 3"), std::string::npos);
  EXPECT_EQ(from_json(json), d);
}

TEST(JsonRoundTrip, RandomDocuments) {
  testing::Rng rng(303);
  for (int i = 0; i < 1000; ++i) {
    const Document d = testing::random_document(rng);
    ASSERT_TRUE(validate_document(d).empty()) << i;
    const std::string once = to_json(d);
    const Document back = from_json(once);
    ASSERT_EQ(back, d) << once;
    ASSERT_EQ(to_json(back), once);
  }
}

TEST(FromJson, TruncatedInputReportsOffset) {
  const std::string json = to_json(one_page());
  try {
    from_json(json.substr(0, 40));
    FAIL() << "expected SerializeError";
  } catch (const SerializeError& e) {
    EXPECT_EQ(e.location().rfind("byte ", 0), 0u) << e.location();
  }
}

TEST(FromJson, WrongSchemaTag) {
  try {
    from_json(R"({"schema_tag": "something-else", "version": 1})");
    FAIL() << "expected SerializeError";
  } catch (const SerializeError& e) {
    EXPECT_NE(std::string(e.what()).find("unrecognized document schema"), std::string::npos);
  }
}

TEST(FromJson, MissingFieldNamesPointer) {
  std::string json = to_json(one_page());
  json.replace(json.find("\"name\""), 6, "\"nome\"");
  try {
    from_json(json);
    FAIL() << "expected SerializeError";
  } catch (const SerializeError& e) {
    EXPECT_EQ(e.location(), "/name");
  }
}

TEST(FromJson, BadCaptionLinkFailsValidation) {
  Document d = one_page();
  d.items.push_back(item(DocItemLabel::kCaption, "Figure 1"));
  std::string json = to_json(d);
  json.replace(json.find("\"caption_of\": null"), 18, "\"caption_of\": 0");
  EXPECT_THROW(from_json(json), SerializeError);
}

TEST(ToMarkdown, Golden) {
  Document d = one_page();
  d.metadata.title = "A Study";
  d.metadata.authors = {"Jane Doe", "John Q. Smith"};
  d.items = {item(DocItemLabel::kPageHeader, "Running Header", 0),
             item(DocItemLabel::kTitle, "A Study", 20),
             item(DocItemLabel::kText, "Jane Doe and John Q. Smith", 40),
             item(DocItemLabel::kSectionHeader, "1 Introduction", 60),
             item(DocItemLabel::kText, "Tables with | pipes.", 80),
             item(DocItemLabel::kListItem, "\xE2\x80\xA2 first", 100),
             item(DocItemLabel::kListItem, "second", 110),
             item(DocItemLabel::kPicture, "", 130),
             item(DocItemLabel::kCaption, "Figure 1: A chart.", 240),
             item(DocItemLabel::kCaption, "Table 1: Counts.", 260),
             item(DocItemLabel::kTable, "", 280),
             item(DocItemLabel::kFormula, "E = mc^2", 330),
             item(DocItemLabel::kPageFooter, "7", 780)};
  d.items[8].caption_of = 7;
  d.items[9].caption_of = 10;
  d.items[10].table = TableStructure{2, 2, {cell(0, 0, "Label", CellRole::kColumnHeader),
                                            cell(0, 1, "Count", CellRole::kColumnHeader),
                                            cell(1, 0, "a|b"), cell(1, 1, "3")}};
  ASSERT_TRUE(validate_document(d).empty());
  EXPECT_EQ(to_markdown(d),
            "## A Study\n"
            "Jane Doe, John Q. Smith\n"
            "\n"
            "### 1 Introduction\n"
            "\n"
            "Tables with | pipes.\n"
            "\n"
            "- first\n"
            "- second\n"
            "\n"
            "<!-- image -->\n"
            "\n"
            "Figure 1: A chart.\n"
            "\n"
            "Table 1: Counts.\n"
            "\n"
            "| Label | Count |\n"
            "|---|---|\n"
            "| a\\|b | 3 |\n"
            "\n"
            "```\n"
            "E = mc^2\n"
            "```\n");
}

TEST(ToMarkdown, OnlyFurnitureIsEmpty) {
  Document d = one_page();
  d.items = {item(DocItemLabel::kPageHeader, "Header"), item(DocItemLabel::kPageFooter, "1", 700)};
  EXPECT_EQ(to_markdown(d), "");
  MarkdownPolicy keep;
  keep.suppress_labels.clear();
  EXPECT_EQ(to_markdown(d, keep), "Header\n\n1\n");
}

TEST(ToMarkdown, TableBetweenParagraphs) {
  Document d = one_page();
  d.items = {item(DocItemLabel::kText, "before", 0), item(DocItemLabel::kTable, "", 20),
             item(DocItemLabel::kText, "after", 60)};
  d.items[1].table = TableStructure{1, 1, {cell(0, 0, "x", CellRole::kColumnHeader)}};
  EXPECT_EQ(to_markdown(d), "before\n\n| x |\n|---|\n\nafter\n");
}

TEST(TableToMarkdown, SingleCell) {
  EXPECT_EQ(table_to_markdown(TableStructure{1, 1, {cell(0, 0, "x")}}), "| x |\n|---|");
}

TEST(TableToMarkdown, Empty) { EXPECT_EQ(table_to_markdown(TableStructure{}), ""); }

TEST(TableToMarkdown, SpanRepeatsText) {
  const TableStructure t{3, 3,
                         {cell(0, 0, "Model", CellRole::kColumnHeader, 2, 1),
                          cell(0, 1, "Score", CellRole::kColumnHeader, 1, 2),
                          cell(1, 1, "P", CellRole::kColumnHeader), cell(1, 2, "R", CellRole::kColumnHeader),
                          cell(2, 0, "ours"), cell(2, 1, "0.9"), cell(2, 2, "0.8")}};
  EXPECT_EQ(table_to_markdown(t),
            "| Model | Score | Score |\n"
            "| Model | P | R |\n"
            "|---|---|---|\n"
            "| ours | 0.9 | 0.8 |");
}

TEST(TableToMarkdown, EmptyPositionsRenderBlank) {
  const TableStructure t{2, 2, {cell(0, 0, "h", CellRole::kColumnHeader), cell(1, 1, "v")}};
  EXPECT_EQ(table_to_markdown(t), "| h |  |\n|---|---|\n|  | v |");
}

TEST(TableToMarkdown, MatchesExpansionOracle) {
  testing::Rng rng(404);
  for (int i = 0; i < 1000; ++i) {
    const TableStructure t = testing::random_table_structure(rng);
    const std::string md = table_to_markdown(t);
    const auto rows = testing::parse_pipe_table(md);
    ASSERT_EQ(rows, testing::expansion_oracle(t)) << md;
    ASSERT_EQ(expand_table(t), testing::expansion_oracle(t));
  }
}

}  // namespace
}  // namespace docforge
