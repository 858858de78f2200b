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

#include "docforge/model.hpp"

#include <gtest/gtest.h>

namespace docforge {
namespace {

Document two_page_doc() {
  Document d;
  d.name = "doc";
  d.pages = {{1, 612, 792}, {2, 612, 792}};
  return d;
}

DocItem text_item(int page, std::string text = "hello") {
  DocItem item;
  item.label = DocItemLabel::kText;
  item.text = std::move(text);
  item.prov.push_back({page, {10, 10, 50, 20}, {0}});
  return item;
}

TEST(Labels, RoundTripNames) {
  for (auto label : kAllLabels) {
    EXPECT_EQ(parse_label(label_name(label)), label);
  }
  EXPECT_EQ(label_name(DocItemLabel::kSectionHeader), "section_header");
  EXPECT_FALSE(parse_label("headline").has_value());
}

TEST(Roles, RoundTripNames) {
  for (auto role : {CellRole::kColumnHeader, CellRole::kRowHeader, CellRole::kBody}) {
    EXPECT_EQ(parse_role(role_name(role)), role);
  }
}

TEST(ValidateDocument, EmptyDocumentIsValid) {
  EXPECT_TRUE(validate_document(Document{}).empty());
}

TEST(ValidateDocument, MissingPage) {
  Document d = two_page_doc();
  d.items.push_back(text_item(99));
  const auto report = validate_document(d);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].item_index, 0u);
}

TEST(ValidateDocument, TableWithoutStructure) {
  Document d = two_page_doc();
  DocItem item = text_item(1);
  item.label = DocItemLabel::kTable;
  d.items.push_back(item);
  EXPECT_EQ(validate_document(d).size(), 1u);
}

TEST(ValidateDocument, StructureOnNonTable) {
  Document d = two_page_doc();
  DocItem item = text_item(1);
  item.table = TableStructure{1, 1, {}};
  d.items.push_back(item);
  EXPECT_EQ(validate_document(d).size(), 1u);
}

TEST(ValidateDocument, PictureMustHaveNoText) {
  Document d = two_page_doc();
  DocItem item = text_item(1, "inside figure");
  item.label = DocItemLabel::kPicture;
  d.items.push_back(item);
  EXPECT_EQ(validate_document(d).size(), 1u);
}

TEST(ValidateDocument, CaptionLinks) {
  Document d = two_page_doc();
  DocItem pic = text_item(1, "");
  pic.label = DocItemLabel::kPicture;
  DocItem cap = text_item(1, "Figure 1");
  cap.label = DocItemLabel::kCaption;
  cap.caption_of = 0;
  d.items = {pic, cap};
  EXPECT_TRUE(validate_document(d).empty());

  d.items[1].caption_of = 1;  // caption pointing at itself
  EXPECT_EQ(validate_document(d).size(), 1u);
  d.items[1].caption_of = 7;
  EXPECT_EQ(validate_document(d).size(), 1u);
  d.items[1].label = DocItemLabel::kText;
  d.items[1].caption_of = 0;
  EXPECT_EQ(validate_document(d).size(), 1u);
}

TEST(ValidateDocument, LanguageMustBeSupported) {
  Document d;
  d.metadata.language = "en";
  EXPECT_TRUE(validate_document(d).empty());
  d.metadata.language = "xx";
  EXPECT_EQ(validate_document(d).size(), 1u);
}

TEST(ValidateDocument, TokensCheckedAgainstParsedPages) {
  Document d = two_page_doc();
  d.items.push_back(text_item(1));
  d.items[0].prov[0].token_ids = {0, 42};
  std::vector<ParsedPage> parsed(2);
  parsed[0].page_no = 1;
  parsed[0].tokens.push_back({0, "hello", {10, 10, 50, 20}, std::nullopt});
  parsed[1].page_no = 2;
  EXPECT_TRUE(validate_document(d).empty());
  EXPECT_EQ(validate_document(d, &parsed).size(), 1u);
}

TEST(ValidateDocument, Pure) {
  Document d = two_page_doc();
  d.items.push_back(text_item(99));
  d.items.push_back(text_item(1));
  d.items[1].prov.clear();
  EXPECT_EQ(validate_document(d), validate_document(d));
  EXPECT_EQ(validate_document(d).size(), 2u);
}

TEST(ValidateTable, RejectsOverlapsAndOutOfBounds) {
  TableStructure t{2, 2, {}};
  TableCell a;
  a.row_span = 2;
  a.bbox = {0, 0, 1, 1};
  TableCell b;
  b.start_row = 1;
  b.bbox = {0, 0, 1, 1};
  t.cells = {a, b};
  ValidationReport report;
  validate_table(t, std::nullopt, report);
  EXPECT_EQ(report.size(), 1u);

  report.clear();
  t.cells = {a};
  t.cells[0].start_col = 2;
  validate_table(t, std::nullopt, report);
  EXPECT_EQ(report.size(), 1u);

  report.clear();
  validate_table(TableStructure{0, 3, {}}, std::nullopt, report);
  EXPECT_EQ(report.size(), 1u);
}

TEST(TableStructure, CellAt) {
  TableStructure t{2, 3, {}};
  TableCell c;
  c.start_col = 1;
  c.col_span = 2;
  t.cells.push_back(c);
  EXPECT_EQ(t.cell_at(0, 0), -1);
  EXPECT_EQ(t.cell_at(0, 1), 0);
  EXPECT_EQ(t.cell_at(0, 2), 0);
  EXPECT_EQ(t.cell_at(1, 2), -1);
}

TEST(TextToken, EffectiveFontSize) {
  TextToken t{0, "x", {0, 0, 5, 12}, std::nullopt};
  EXPECT_EQ(t.effective_font_size(), 12.0);
  t.font_size = 9.5;
  EXPECT_EQ(t.effective_font_size(), 9.5);
}

}  // namespace
}  // namespace docforge
