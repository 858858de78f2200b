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

#include "docforge/backend.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "docforge/error.hpp"
#include "oracles.hpp"

namespace docforge {
namespace {

const char* kOnePage = R"({"header":{"format":"docforge-pages","version":1},
  "name":"one","pages":[{"page_no":1,"width":612,"height":792,"tokens":[]}]})";

std::string payload_with_pages(int n) {
  std::string s = R"({"header":{"format":"docforge-pages","version":1},"pages":[)";
  for (int i = 1; i <= n; ++i) {
    if (i > 1) s += ",";
    s += R"({"page_no":)" + std::to_string(i) +
         R"(,"width":100,"height":100,"tokens":[{"id":)" + std::to_string(i) +
         R"(,"text":"w","bbox":[1,1,5,5]}]})";
  }
  return s + "]}";
}

std::string error_of(std::string_view payload) {
  try {
    parse_interchange(payload, "x");
  } catch (const BackendError& e) {
    return e.what();
  }
  return "";
}

TEST(LoadDocument, MinimalPage) {
  const auto doc = load_document(RawBytes{kOnePage, "one"});
  ASSERT_EQ(doc.pages.size(), 1u);
  EXPECT_TRUE(doc.pages[0].tokens.empty());
  EXPECT_EQ(doc.name, "one");
}

TEST(LoadDocument, NonConsecutivePages) {
  std::string s = payload_with_pages(2);
  s.replace(s.find(R"("page_no":2)"), 11, R"("page_no":3)");
  EXPECT_NE(error_of(s).find("non-consecutive page numbers"), std::string::npos);
}

TEST(LoadDocument, MaxPagesTruncates) {
  const auto doc = load_document(RawBytes{payload_with_pages(5), "five"}, 2);
  EXPECT_EQ(doc.pages.size(), 2u);
}

TEST(LoadDocument, HeaderMustComeFirst) {
  const std::string s = R"({"pages":[],"header":{"format":"docforge-pages","version":1}})";
  EXPECT_NE(error_of(s).find("first key"), std::string::npos);
}

TEST(LoadDocument, RejectsOtherVersions) {
  const std::string s = R"({"header":{"format":"docforge-pages","version":2},"pages":[]})";
  EXPECT_NE(error_of(s).find("unsupported interchange version 2"), std::string::npos);
}

TEST(LoadDocument, RejectsDuplicateTokenIds) {
  std::string s = payload_with_pages(1);
  s.insert(s.rfind("]}]}"), R"(,{"id":1,"text":"v","bbox":[6,1,9,5]})");
  const auto err = error_of(s);
  EXPECT_NE(err.find("duplicate token id 1"), std::string::npos);
  EXPECT_NE(err.find("/pages/0/tokens/1/id"), std::string::npos);
}

TEST(LoadDocument, SyntaxErrorCarriesOffset) {
  const std::string s = std::string(kOnePage).substr(0, 40);
  try {
    parse_interchange(s, "x");
    FAIL();
  } catch (const BackendError& e) {
    ASSERT_TRUE(e.byte_offset().has_value());
    EXPECT_LE(*e.byte_offset(), s.size());
  }
}

TEST(LoadDocument, ClampsTokensWithWarning) {
  std::string s = payload_with_pages(1);
  s.replace(s.find("[1,1,5,5]"), 9, "[90,1,120,5]");
  const auto doc = parse_interchange(s, "x");
  EXPECT_EQ(doc.pages[0].tokens[0].bbox.right, 100.0);
  ASSERT_EQ(doc.warnings.size(), 1u);
  EXPECT_NE(doc.warnings[0].find("clamped"), std::string::npos);
}

TEST(LoadDocument, SizeLimit) {
  FetchOptions opts;
  opts.max_bytes = 10;
  try {
    read_source(RawBytes{kOnePage, "one"}, opts);
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_STREQ(e.what(), "input size limit exceeded");
  }
}

TEST(LoadDocument, MissingFile) {
  EXPECT_THROW(load_document(FilePath{"/nonexistent/file.dpages.json"}), BackendError);
}

TEST(SourceName, StripsExtension) {
  EXPECT_EQ(source_name(FilePath{"/a/b/paper.dpages.json"}), "paper");
  EXPECT_EQ(source_name(RawBytes{"", "raw"}), "raw");
  EXPECT_EQ(source_name(Url{"http://host/x/report.dpages.json"}), "report");
}

TEST(ProbeFormat, Examples) {
  EXPECT_EQ(probe_format(kOnePage), kInterchangeTag);
  EXPECT_EQ(probe_format("\xEF\xBB\xBF  " + std::string(kOnePage)), kInterchangeTag);
  EXPECT_EQ(probe_format(""), "unknown");
  EXPECT_EQ(probe_format("%PDF-1.7\n"), "unknown");
  EXPECT_EQ(probe_format(R"({"pages":[]})"), "unknown");
}

TEST(RenderPage, Sizes) {
  ParsedPage p;
  p.width = 612;
  p.height = 792;
  const auto a = render_page(p, 72);
  EXPECT_EQ(a.width, 612);
  EXPECT_EQ(a.height, 792);
  const auto b = render_page(p, 216);
  EXPECT_EQ(b.width, 1836);
  EXPECT_EQ(b.height, 2376);
  EXPECT_THROW(render_page(p, 0), BackendError);
}

TEST(RenderPage, CeilFormulaForAllDpi) {
  ParsedPage p;
  p.width = 595.3;
  p.height = 841.9;
  for (int dpi = 1; dpi <= 400; dpi += 7) {
    const auto img = render_page(p, dpi);
    EXPECT_EQ(img.width, static_cast<int>(std::ceil(595.3 * dpi / 72.0)));
    EXPECT_EQ(img.height, static_cast<int>(std::ceil(841.9 * dpi / 72.0)));
    EXPECT_EQ(img.pixels.size(), static_cast<std::size_t>(img.width) * img.height);
  }
}

TEST(RenderPage, SyntheticRasterMarksTokens) {
  ParsedPage p;
  p.width = 20;
  p.height = 10;
  p.tokens.push_back({0, "x", {2, 2, 6, 6}, std::nullopt});
  const auto img = render_page(p, 72);
  EXPECT_EQ(img.at(3, 3), 0);
  EXPECT_EQ(img.at(15, 8), 255);
}

std::string base64(const std::string& in) {
  static const char* abc = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  std::size_t i = 0;
  for (; i + 2 < in.size(); i += 3) {
    const unsigned v = (unsigned char)in[i] << 16 | (unsigned char)in[i + 1] << 8 | (unsigned char)in[i + 2];
    out += abc[v >> 18 & 63];
    out += abc[v >> 12 & 63];
    out += abc[v >> 6 & 63];
    out += abc[v & 63];
  }
  if (i + 1 == in.size()) {
    const unsigned v = (unsigned char)in[i] << 16;
    out += abc[v >> 18 & 63];
    out += abc[v >> 12 & 63];
    out += "==";
  } else if (i + 2 == in.size()) {
    const unsigned v = (unsigned char)in[i] << 16 | (unsigned char)in[i + 1] << 8;
    out += abc[v >> 18 & 63];
    out += abc[v >> 12 & 63];
    out += abc[v >> 6 & 63];
    out += '=';
  }
  return out;
}

TEST(RenderPage, EmbeddedRasterIsRescaled) {
  const std::string pgm = std::string("P5\n4 2\n255\n") + std::string("\x00\x40\x80\xC0\x10\x20\x30\x40", 8);
  ParsedPage p;
  p.width = 4;
  p.height = 2;
  p.raster = RasterRef{72, "", base64(pgm)};
  const auto same = render_page(p, 72);
  ASSERT_EQ(same.width, 4);
  EXPECT_EQ(same.at(1, 0), 0x40);
  EXPECT_EQ(same.at(3, 1), 0x40);
  const auto twice = render_page(p, 144);
  ASSERT_EQ(twice.width, 8);
  ASSERT_EQ(twice.height, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 8; ++x) EXPECT_EQ(twice.at(x, y), same.at(x / 2, y / 2));
  }
}

TEST(RenderPage, RasterPathResolvesAgainstDocument) {
  const auto dir = std::filesystem::temp_directory_path() / "docforge_raster_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "p1.pgm", std::ios::binary) << "P5\n2 1\n255\n" << std::string("\x11\x22", 2);
  std::ofstream(dir / "doc.dpages.json") << R"({"header":{"format":"docforge-pages","version":1},
    "pages":[{"page_no":1,"width":2,"height":1,"tokens":[],"raster":{"dpi":72,"path":"p1.pgm"}}]})";
  const auto doc = load_document(FilePath{dir / "doc.dpages.json"});
  const auto img = render_page(doc.pages[0], 72);
  EXPECT_EQ(img.at(1, 0), 0x22);
}

TEST(Interchange, RoundTripPreservesEverything) {
  testing::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const ParsedDocument doc = testing::random_parsed_document(rng);
    const std::string once = write_interchange(doc);
    const ParsedDocument back = parse_interchange(once, "ignored");
    ASSERT_EQ(back, doc) << once;
    EXPECT_EQ(write_interchange(back), once);
    // Tokens are never merged.
    for (std::size_t p = 0; p < doc.pages.size(); ++p) {
      EXPECT_EQ(back.pages[p].tokens.size(), doc.pages[p].tokens.size());
    }
  }
}

TEST(Registry, InterchangeIsRegistered) {
  auto b = BackendRegistry::global().find("interchange");
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->name(), "interchange");
  EXPECT_EQ(BackendRegistry::global().find("pdfium"), nullptr);
}

class FetchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Get("/doc.dpages.json", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kOnePage, "application/json");
    });
    server_.Get("/moved", [](const httplib::Request&, httplib::Response& res) {
      res.set_redirect("/doc.dpages.json");
    });
    server_.Get(R"(/loop/(\d+))", [](const httplib::Request& req, httplib::Response& res) {
      res.set_redirect("/loop/" + std::to_string(std::stoi(req.matches[1]) + 1));
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(FetchTest, FollowsRedirects) {
  const auto doc = load_document(Url{url("/moved")});
  EXPECT_EQ(doc.pages.size(), 1u);
  EXPECT_EQ(read_source(Url{url("/doc.dpages.json")}), kOnePage);
}

TEST_F(FetchTest, RedirectLimit) {
  try {
    read_source(Url{url("/loop/0")});
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_NE(std::string(e.what()).find("redirects"), std::string::npos);
  }
}

TEST_F(FetchTest, HttpErrorsAndSizeLimit) {
  EXPECT_THROW(read_source(Url{url("/missing")}), BackendError);
  FetchOptions opts;
  opts.max_bytes = 8;
  EXPECT_THROW(read_source(Url{url("/doc.dpages.json")}, opts), BackendError);
}

}  // namespace
}  // namespace docforge
