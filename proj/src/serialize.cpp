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

#include <fmt/format.h>
#include <json.hpp>

#include "docforge/assemble.hpp"
#include "docforge/error.hpp"
#include "text_util.hpp"

namespace docforge {

namespace {

using ojson = nlohmann::ordered_json;

ojson bbox_json(const BoundingBox& b) {
  return ojson::array({b.left, b.top, b.right, b.bottom});
}

ojson optional_string(const std::optional<std::string>& s) {
  return s ? ojson(*s) : ojson(nullptr);
}

ojson table_json(const TableStructure& t) {
  ojson cells = ojson::array();
  for (const auto& c : t.cells) {
    ojson jc;
    jc["start_row"] = c.start_row;
    jc["start_col"] = c.start_col;
    jc["row_span"] = c.row_span;
    jc["col_span"] = c.col_span;
    jc["role"] = role_name(c.role);
    jc["text"] = c.text;
    jc["source_token_ids"] = c.source_token_ids;
    jc["bbox"] = bbox_json(c.bbox);
    cells.push_back(std::move(jc));
  }
  ojson jt;
  jt["n_rows"] = t.n_rows;
  jt["n_cols"] = t.n_cols;
  jt["cells"] = std::move(cells);
  return jt;
}

// Cursor over the parsed tree that knows its JSON pointer.
class Reader {
 public:
  Reader(const ojson& node, std::string pointer)
      : node_(node), pointer_(std::move(pointer)) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw SerializeError(why, pointer_.empty() ? "/" : pointer_);
  }

  Reader field(const char* key) const {
    if (!node_.is_object()) fail("expected an object");
    auto it = node_.find(key);
    if (it == node_.end()) {
      Reader(node_, pointer_ + "/" + key).fail("missing field");
    }
    return Reader(*it, pointer_ + "/" + key);
  }

  Reader at(std::size_t i) const {
    return Reader(node_[i], fmt::format("{}/{}", pointer_, i));
  }

  std::size_t array_size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }

  bool is_null() const { return node_.is_null(); }

  std::string str() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  double number() const {
    if (!node_.is_number()) fail("expected a number");
    return node_.get<double>();
  }

  std::int64_t integer() const {
    if (!node_.is_number_integer()) fail("expected an integer");
    return node_.get<std::int64_t>();
  }

  bool boolean() const {
    if (!node_.is_boolean()) fail("expected a boolean");
    return node_.get<bool>();
  }

  BoundingBox bbox() const {
    if (array_size() != 4) fail("bbox must hold 4 numbers");
    return {at(0).number(), at(1).number(), at(2).number(), at(3).number()};
  }

  std::vector<TokenId> ids() const {
    std::vector<TokenId> out;
    for (std::size_t i = 0, n = array_size(); i < n; ++i) {
      out.push_back(at(i).integer());
    }
    return out;
  }

  std::optional<std::string> optional_str() const {
    if (is_null()) return std::nullopt;
    return str();
  }

 private:
  const ojson& node_;
  std::string pointer_;
};

TableStructure read_table(const Reader& r) {
  TableStructure t;
  t.n_rows = static_cast<int>(r.field("n_rows").integer());
  t.n_cols = static_cast<int>(r.field("n_cols").integer());
  const Reader cells = r.field("cells");
  for (std::size_t i = 0, n = cells.array_size(); i < n; ++i) {
    const Reader jc = cells.at(i);
    TableCell c;
    c.start_row = static_cast<int>(jc.field("start_row").integer());
    c.start_col = static_cast<int>(jc.field("start_col").integer());
    c.row_span = static_cast<int>(jc.field("row_span").integer());
    c.col_span = static_cast<int>(jc.field("col_span").integer());
    const Reader role = jc.field("role");
    auto parsed = parse_role(role.str());
    if (!parsed) role.fail("unknown cell role");
    c.role = *parsed;
    c.text = jc.field("text").str();
    c.source_token_ids = jc.field("source_token_ids").ids();
    c.bbox = jc.field("bbox").bbox();
    t.cells.push_back(std::move(c));
  }
  return t;
}

std::string escape_cell(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string strip_bullet(std::string_view s) {
  s = text::trim(s);
  if (text::starts_with_bullet_glyph(s)) {
    const auto space = s.find(' ');
    if (space == std::string_view::npos) return "";
    return std::string(text::trim(s.substr(space)));
  }
  return std::string(s);
}

}  // namespace

std::string to_json(const Document& doc) {
  const auto report = validate_document(doc);
  if (!report.empty()) {
    const auto& v = report.front();
    throw SerializeError("invalid document: " + v.message,
                         v.item_index ? fmt::format("/items/{}", *v.item_index)
                                      : std::string("/"));
  }
  ojson root;
  root["schema_tag"] = kDocumentSchemaTag;
  root["version"] = kDocumentSchemaVersion;
  root["name"] = doc.name;
  root["metadata"] = {{"title", optional_string(doc.metadata.title)},
                      {"authors", doc.metadata.authors},
                      {"language", optional_string(doc.metadata.language)}};
  ojson pages = ojson::array();
  for (const auto& p : doc.pages) {
    pages.push_back(
        {{"page_no", p.page_no}, {"width", p.width}, {"height", p.height}});
  }
  root["pages"] = std::move(pages);
  ojson items = ojson::array();
  for (const auto& item : doc.items) {
    ojson ji;
    ji["label"] = label_name(item.label);
    ji["text"] = item.text;
    ojson prov = ojson::array();
    for (const auto& p : item.prov) {
      prov.push_back({{"page_no", p.page_no},
                      {"bbox", bbox_json(p.bbox)},
                      {"token_ids", p.token_ids}});
    }
    ji["prov"] = std::move(prov);
    ji["table"] = item.table ? table_json(*item.table) : ojson(nullptr);
    ji["caption_of"] = item.caption_of ? ojson(*item.caption_of) : ojson(nullptr);
    ji["reference"] = item.reference_entry;
    items.push_back(std::move(ji));
  }
  root["items"] = std::move(items);
  return root.dump(2) + "\n";
}

Document from_json(std::string_view text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw SerializeError(std::string("JSON syntax error: ") + e.what(),
                         fmt::format("byte {}", e.byte > 0 ? e.byte - 1 : 0));
  }
  const Reader r(root, "");
  if (!root.is_object()) r.fail("expected an object");
  auto tag = root.find("schema_tag");
  if (tag == root.end() || !tag->is_string() ||
      tag->get<std::string>() != kDocumentSchemaTag) {
    throw SerializeError("unrecognized document schema", "/schema_tag");
  }
  const auto version = r.field("version").integer();
  if (version != kDocumentSchemaVersion) {
    throw SerializeError(fmt::format("unsupported document version {}", version),
                         "/version");
  }

  Document doc;
  doc.name = r.field("name").str();
  const Reader meta = r.field("metadata");
  doc.metadata.title = meta.field("title").optional_str();
  const Reader authors = meta.field("authors");
  for (std::size_t i = 0, n = authors.array_size(); i < n; ++i) {
    doc.metadata.authors.push_back(authors.at(i).str());
  }
  doc.metadata.language = meta.field("language").optional_str();

  const Reader pages = r.field("pages");
  for (std::size_t i = 0, n = pages.array_size(); i < n; ++i) {
    const Reader p = pages.at(i);
    doc.pages.push_back({static_cast<int>(p.field("page_no").integer()),
                         p.field("width").number(), p.field("height").number()});
  }

  const Reader items = r.field("items");
  for (std::size_t i = 0, n = items.array_size(); i < n; ++i) {
    const Reader ji = items.at(i);
    DocItem item;
    const Reader label = ji.field("label");
    auto parsed = parse_label(label.str());
    if (!parsed) label.fail("unknown label '" + label.str() + "'");
    item.label = *parsed;
    item.text = ji.field("text").str();
    const Reader prov = ji.field("prov");
    for (std::size_t k = 0, m = prov.array_size(); k < m; ++k) {
      const Reader jp = prov.at(k);
      item.prov.push_back({static_cast<int>(jp.field("page_no").integer()),
                           jp.field("bbox").bbox(), jp.field("token_ids").ids()});
    }
    const Reader table = ji.field("table");
    if (!table.is_null()) item.table = read_table(table);
    const Reader caption = ji.field("caption_of");
    if (!caption.is_null()) {
      const auto idx = caption.integer();
      if (idx < 0) caption.fail("caption link must be non-negative");
      item.caption_of = static_cast<std::size_t>(idx);
    }
    item.reference_entry = ji.field("reference").boolean();
    doc.items.push_back(std::move(item));
  }

  const auto report = validate_document(doc);
  if (!report.empty()) {
    const auto& v = report.front();
    throw SerializeError("document fails validation: " + v.message,
                         v.item_index ? fmt::format("/items/{}", *v.item_index)
                                      : std::string("/"));
  }
  return doc;
}

std::vector<std::vector<std::string>> expand_table(const TableStructure& table) {
  std::vector<std::vector<std::string>> grid(
      static_cast<std::size_t>(std::max(table.n_rows, 0)),
      std::vector<std::string>(static_cast<std::size_t>(std::max(table.n_cols, 0))));
  for (const auto& c : table.cells) {
    for (int r = c.start_row; r < c.end_row() && r < table.n_rows; ++r) {
      for (int col = c.start_col; col < c.end_col() && col < table.n_cols; ++col) {
        grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = c.text;
      }
    }
  }
  return grid;
}

std::string table_to_markdown(const TableStructure& table) {
  if (table.n_rows <= 0 || table.n_cols <= 0) return "";
  const auto grid = expand_table(table);

  int header_rows = 0;
  for (int r = 0; r < table.n_rows; ++r) {
    bool any = false;
    bool all_header = true;
    for (const auto& c : table.cells) {
      if (r < c.start_row || r >= c.end_row()) continue;
      any = true;
      if (c.role != CellRole::kColumnHeader) all_header = false;
    }
    if (!any || !all_header) break;
    ++header_rows;
  }
  if (header_rows == 0) header_rows = 1;

  std::string out;
  for (int r = 0; r < table.n_rows; ++r) {
    if (r == header_rows) {
      out += '|';
      for (int c = 0; c < table.n_cols; ++c) out += "---|";
      out += '\n';
    }
    out += '|';
    for (const auto& cell : grid[static_cast<std::size_t>(r)]) {
      out += ' ';
      out += escape_cell(cell);
      out += " |";
    }
    out += '\n';
  }
  if (header_rows == table.n_rows) {
    out += '|';
    for (int c = 0; c < table.n_cols; ++c) out += "---|";
    out += '\n';
  }
  out.pop_back();
  return out;
}

std::string to_markdown(const Document& doc, const MarkdownPolicy& policy) {
  std::vector<bool> skip(doc.items.size(), false);
  if (!doc.metadata.authors.empty()) {
    for (std::size_t i : author_item_indices(doc)) skip[i] = true;
  }
  // Picture captions render with their picture.
  std::vector<std::optional<std::size_t>> picture_caption(doc.items.size());
  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    const auto& item = doc.items[i];
    if (item.label == DocItemLabel::kCaption && item.caption_of &&
        doc.items[*item.caption_of].label == DocItemLabel::kPicture &&
        !picture_caption[*item.caption_of]) {
      picture_caption[*item.caption_of] = i;
      skip[i] = true;
    }
  }

  std::vector<std::string> blocks;
  bool authors_done = false;
  bool previous_list = false;
  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    const auto& item = doc.items[i];
    if (skip[i] || policy.suppress_labels.count(item.label)) continue;
    const bool was_list = previous_list;
    previous_list = item.label == DocItemLabel::kListItem;
    const std::string body(text::trim(item.text));
    switch (item.label) {
      case DocItemLabel::kTitle: {
        std::string block = policy.title_prefix + " " + body;
        if (!authors_done && !doc.metadata.authors.empty()) {
          block += "\n" + text::join(doc.metadata.authors, ", ");
          authors_done = true;
        }
        blocks.push_back(std::move(block));
        break;
      }
      case DocItemLabel::kSectionHeader:
        blocks.push_back(policy.section_prefix + " " + body);
        break;
      case DocItemLabel::kListItem:
        // Adjacent items form one list.
        if (!blocks.empty() && was_list) {
          blocks.back() += "\n" + policy.bullet + strip_bullet(body);
        } else {
          blocks.push_back(policy.bullet + strip_bullet(body));
        }
        break;
      case DocItemLabel::kFormula:
      case DocItemLabel::kCode:
        blocks.push_back("```\n" + body + "\n```");
        break;
      case DocItemLabel::kPicture:
        blocks.push_back(policy.picture_placeholder);
        if (picture_caption[i]) {
          const std::string caption(
              text::trim(doc.items[*picture_caption[i]].text));
          if (!caption.empty()) blocks.push_back(caption);
        }
        break;
      case DocItemLabel::kTable:
        if (item.table) {
          blocks.push_back(table_to_markdown(*item.table));
        }
        break;
      default:
        if (!body.empty()) blocks.push_back(body);
    }
  }
  if (blocks.empty()) return "";
  return text::join(blocks, "\n\n") + "\n";
}

}  // namespace docforge
