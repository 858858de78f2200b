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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "docforge/error.hpp"

namespace docforge {

namespace {

using ojson = nlohmann::ordered_json;

std::string strip_interchange_suffix(std::string name) {
  if (name.size() > kInterchangeExtension.size() &&
      name.ends_with(kInterchangeExtension)) {
    name.resize(name.size() - kInterchangeExtension.size());
  } else if (auto dot = name.rfind('.'); dot != std::string::npos && dot > 0) {
    name.resize(dot);
  }
  return name;
}

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw BackendError("malformed URL '" + url + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string fetch_url(const std::string& url, const FetchOptions& opts) {
  std::string current = url;
  for (int hop = 0; hop <= opts.max_redirects; ++hop) {
    const ParsedUrl parts = split_url(current);
    httplib::Client client(parts.scheme_host_port);
    if (!client.is_valid()) {
      throw BackendError("unsupported URL '" + current + "'");
    }
    client.set_follow_location(false);
    client.set_connection_timeout(opts.timeout);
    client.set_read_timeout(opts.timeout);
    auto res = client.Get(parts.path);
    if (!res) {
      throw BackendError("fetching '" + current +
                         "' failed: " + httplib::to_string(res.error()));
    }
    if (res->status >= 300 && res->status < 400 &&
        res->has_header("Location")) {
      std::string next = res->get_header_value("Location");
      if (next.starts_with("/")) next = parts.scheme_host_port + next;
      current = std::move(next);
      continue;
    }
    if (res->status != 200) {
      throw BackendError(
          fmt::format("fetching '{}' failed: HTTP {}", current, res->status));
    }
    if (opts.max_bytes && res->body.size() > *opts.max_bytes) {
      throw BackendError("input size limit exceeded");
    }
    return std::move(res->body);
  }
  throw BackendError(fmt::format("fetching '{}' failed: more than {} redirects",
                                 url, opts.max_redirects));
}

std::string read_file(const std::filesystem::path& path,
                      std::optional<std::uint64_t> max_bytes) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) {
    throw BackendError("cannot open '" + path.string() + "': " + ec.message());
  }
  if (max_bytes && size > *max_bytes) {
    throw BackendError("input size limit exceeded");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BackendError("cannot open '" + path.string() + "'");
  std::string bytes(size, '\0');
  in.read(bytes.data(), static_cast<std::streamsize>(size));
  if (!in) throw BackendError("cannot read '" + path.string() + "'");
  return bytes;
}

[[noreturn]] void malformed(const std::string& pointer, const std::string& why) {
  throw BackendError("malformed interchange payload at " + pointer + ": " + why);
}

double number_at(const ojson& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    malformed(where + "/" + key, "expected a number");
  }
  return it->get<double>();
}

std::int64_t integer_at(const ojson& obj, const char* key,
                        const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    malformed(where + "/" + key, "expected an integer");
  }
  return it->get<std::int64_t>();
}

BoundingBox parse_bbox(const ojson& v, const std::string& where) {
  if (!v.is_array() || v.size() != 4) {
    malformed(where, "bbox must be an array of 4 numbers");
  }
  for (const auto& x : v) {
    if (!x.is_number()) malformed(where, "bbox must be an array of 4 numbers");
  }
  BoundingBox b{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                v[3].get<double>()};
  if (!b.valid()) malformed(where, "bbox has left > right or top > bottom");
  return b;
}

ojson bbox_json(const BoundingBox& b) {
  return ojson::array({b.left, b.top, b.right, b.bottom});
}

ParsedPage parse_page(const ojson& jp, const std::string& where,
                      const std::filesystem::path& base_dir,
                      std::vector<std::string>& warnings) {
  if (!jp.is_object()) malformed(where, "page must be an object");
  ParsedPage page;
  page.page_no = static_cast<int>(integer_at(jp, "page_no", where));
  page.width = number_at(jp, "width", where);
  page.height = number_at(jp, "height", where);
  if (!(page.width > 0) || !(page.height > 0)) {
    malformed(where, "page dimensions must be positive");
  }

  auto tokens = jp.find("tokens");
  if (tokens == jp.end() || !tokens->is_array()) {
    malformed(where + "/tokens", "expected an array");
  }
  std::set<TokenId> seen;
  for (std::size_t i = 0; i < tokens->size(); ++i) {
    const auto& jt = (*tokens)[i];
    const std::string tw = fmt::format("{}/tokens/{}", where, i);
    if (!jt.is_object()) malformed(tw, "token must be an object");
    TextToken tok;
    tok.id = integer_at(jt, "id", tw);
    if (!seen.insert(tok.id).second) {
      malformed(tw + "/id", fmt::format("duplicate token id {}", tok.id));
    }
    auto text = jt.find("text");
    if (text == jt.end() || !text->is_string()) {
      malformed(tw + "/text", "expected a string");
    }
    tok.text = text->get<std::string>();
    auto bbox = jt.find("bbox");
    if (bbox == jt.end()) malformed(tw + "/bbox", "missing");
    tok.bbox = parse_bbox(*bbox, tw + "/bbox");
    if (auto fs = jt.find("font_size"); fs != jt.end()) {
      if (!fs->is_number() || !(fs->get<double>() > 0)) {
        malformed(tw + "/font_size", "expected a positive number");
      }
      tok.font_size = fs->get<double>();
    }
    if (bbox_clamp(tok.bbox, page.width, page.height)) {
      warnings.push_back(fmt::format(
          "page {}: token {} bbox clamped to the page", page.page_no, tok.id));
    }
    page.tokens.push_back(std::move(tok));
  }

  if (auto raster = jp.find("raster"); raster != jp.end()) {
    const std::string rw = where + "/raster";
    if (!raster->is_object()) malformed(rw, "expected an object");
    RasterRef ref;
    ref.dpi = static_cast<int>(integer_at(*raster, "dpi", rw));
    if (ref.dpi <= 0) malformed(rw + "/dpi", "must be positive");
    auto path = raster->find("path");
    auto b64 = raster->find("base64");
    if ((path == raster->end()) == (b64 == raster->end())) {
      malformed(rw, "exactly one of 'path' and 'base64' is required");
    }
    if (path != raster->end()) {
      if (!path->is_string()) malformed(rw + "/path", "expected a string");
      std::filesystem::path p = path->get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      ref.path = p.string();
    } else {
      if (!b64->is_string()) malformed(rw + "/base64", "expected a string");
      ref.base64 = b64->get<std::string>();
    }
    page.raster = std::move(ref);
  }

  if (auto props = jp.find("proposals"); props != jp.end()) {
    if (!props->is_array()) malformed(where + "/proposals", "expected an array");
    for (std::size_t i = 0; i < props->size(); ++i) {
      const auto& jq = (*props)[i];
      const std::string qw = fmt::format("{}/proposals/{}", where, i);
      if (!jq.is_object()) malformed(qw, "proposal must be an object");
      LayoutProposal prop;
      auto bbox = jq.find("bbox");
      if (bbox == jq.end()) malformed(qw + "/bbox", "missing");
      prop.bbox = parse_bbox(*bbox, qw + "/bbox");
      bbox_clamp(prop.bbox, page.width, page.height);
      auto label = jq.find("label");
      if (label == jq.end() || !label->is_string()) {
        malformed(qw + "/label", "expected a string");
      }
      auto parsed = parse_label(label->get<std::string>());
      if (!parsed) {
        malformed(qw + "/label",
                  "unknown label '" + label->get<std::string>() + "'");
      }
      prop.label = *parsed;
      prop.confidence = number_at(jq, "confidence", qw);
      if (!(prop.confidence >= 0 && prop.confidence <= 1)) {
        malformed(qw + "/confidence", "must lie in [0, 1]");
      }
      page.proposals.push_back(prop);
    }
  }
  return page;
}

std::string base64_decode(std::string_view in) {
  static constexpr std::string_view kAlphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve(in.size() * 3 / 4);
  std::uint32_t acc = 0;
  int bits = 0;
  for (char c : in) {
    if (c == '=' || c == '\n' || c == '\r' || c == ' ') continue;
    const auto pos = kAlphabet.find(c);
    if (pos == std::string_view::npos) {
      throw BackendError("raster: invalid base64 payload");
    }
    acc = (acc << 6) | static_cast<std::uint32_t>(pos);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<char>((acc >> bits) & 0xFF));
    }
  }
  return out;
}

// Binary PGM (P5), maxval <= 255.
PageImage decode_pgm(const std::string& data) {
  std::istringstream in(data);
  std::string magic;
  in >> magic;
  auto skip_comments = [&] {
    in >> std::ws;
    while (in.peek() == '#') {
      std::string line;
      std::getline(in, line);
      in >> std::ws;
    }
  };
  int w = 0, h = 0, maxval = 0;
  skip_comments();
  in >> w;
  skip_comments();
  in >> h;
  skip_comments();
  in >> maxval;
  if (magic != "P5" || !in || w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) {
    throw BackendError("raster: expected a binary PGM (P5) image");
  }
  in.get();
  PageImage img;
  img.width = w;
  img.height = h;
  img.pixels.resize(static_cast<std::size_t>(w) * h);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (!in) throw BackendError("raster: truncated PGM data");
  return img;
}

int scaled_extent(double points, int dpi) {
  return static_cast<int>(std::ceil(points * dpi / 72.0));
}

}  // namespace

std::string source_name(const InputSource& src) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FilePath>) {
          return strip_interchange_suffix(s.path.filename().string());
        } else if constexpr (std::is_same_v<T, RawBytes>) {
          return s.name;
        } else {
          std::string path = s.url;
          if (auto q = path.find_first_of("?#"); q != std::string::npos) {
            path.resize(q);
          }
          auto slash = path.rfind('/');
          std::string last =
              slash == std::string::npos ? path : path.substr(slash + 1);
          return last.empty() ? std::string("document")
                              : strip_interchange_suffix(last);
        }
      },
      src);
}

std::string read_source(const InputSource& src, const FetchOptions& opts) {
  return std::visit(
      [&](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FilePath>) {
          return read_file(s.path, opts.max_bytes);
        } else if constexpr (std::is_same_v<T, RawBytes>) {
          if (opts.max_bytes && s.bytes.size() > *opts.max_bytes) {
            throw BackendError("input size limit exceeded");
          }
          return s.bytes;
        } else {
          return fetch_url(s.url, opts);
        }
      },
      src);
}

std::string_view probe_format(std::string_view bytes) {
  constexpr std::size_t kPrefix = 4096;
  const std::string_view prefix = bytes.substr(0, std::min(bytes.size(), kPrefix));
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < prefix.size() &&
           (prefix[i] == ' ' || prefix[i] == '\n' || prefix[i] == '\r' ||
            prefix[i] == '\t')) {
      ++i;
    }
  };
  // Optional UTF-8 byte order mark.
  if (prefix.starts_with("\xEF\xBB\xBF")) i = 3;
  skip_ws();
  if (i >= prefix.size() || prefix[i] != '{') return "unknown";
  ++i;
  skip_ws();
  if (prefix.substr(i, 8) != "\"header\"") return "unknown";
  const std::string quoted = "\"" + std::string(kInterchangeTag) + "\"";
  if (prefix.find(quoted, i) == std::string_view::npos) return "unknown";
  return kInterchangeTag;
}

ParsedDocument parse_interchange(std::string_view bytes, std::string name,
                                 std::optional<int> max_pages,
                                 const std::filesystem::path& base_dir) {
  ojson root;
  try {
    root = ojson::parse(bytes);
  } catch (const ojson::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    throw BackendError(
        fmt::format("malformed interchange payload at byte {}: {}", offset,
                    e.what()),
        offset);
  }
  if (!root.is_object()) malformed("", "top level must be an object");
  if (root.empty() || root.begin().key() != "header") {
    malformed("", "'header' must be the first key");
  }
  const ojson& header = root.front();
  if (!header.is_object()) malformed("/header", "expected an object");
  auto format = header.find("format");
  if (format == header.end() || !format->is_string() ||
      format->get<std::string>() != kInterchangeTag) {
    malformed("/header/format",
              fmt::format("expected \"{}\"", kInterchangeTag));
  }
  const auto version = integer_at(header, "version", "/header");
  if (version != kInterchangeVersion) {
    throw BackendError(
        fmt::format("unsupported interchange version {}", version));
  }

  ParsedDocument doc;
  doc.name = std::move(name);
  if (auto n = root.find("name"); n != root.end()) {
    if (!n->is_string()) malformed("/name", "expected a string");
    doc.name = n->get<std::string>();
  }
  auto pages = root.find("pages");
  if (pages == root.end() || !pages->is_array()) {
    malformed("/pages", "expected an array");
  }
  std::size_t count = pages->size();
  if (max_pages) count = std::min(count, static_cast<std::size_t>(*max_pages));
  for (std::size_t i = 0; i < count; ++i) {
    const std::string where = fmt::format("/pages/{}", i);
    ParsedPage page = parse_page((*pages)[i], where, base_dir, doc.warnings);
    if (page.page_no != static_cast<int>(i) + 1) {
      malformed(where + "/page_no", "non-consecutive page numbers");
    }
    doc.pages.push_back(std::move(page));
  }
  return doc;
}

std::string write_interchange(const ParsedDocument& doc) {
  ojson root;
  root["header"] = {{"format", kInterchangeTag},
                    {"version", kInterchangeVersion}};
  root["name"] = doc.name;
  ojson pages = ojson::array();
  for (const auto& p : doc.pages) {
    ojson jp;
    jp["page_no"] = p.page_no;
    jp["width"] = p.width;
    jp["height"] = p.height;
    ojson tokens = ojson::array();
    for (const auto& t : p.tokens) {
      ojson jt;
      jt["id"] = t.id;
      jt["text"] = t.text;
      jt["bbox"] = bbox_json(t.bbox);
      if (t.font_size) jt["font_size"] = *t.font_size;
      tokens.push_back(std::move(jt));
    }
    jp["tokens"] = std::move(tokens);
    if (p.raster) {
      ojson jr;
      jr["dpi"] = p.raster->dpi;
      if (!p.raster->path.empty()) {
        jr["path"] = p.raster->path;
      } else {
        jr["base64"] = p.raster->base64;
      }
      jp["raster"] = std::move(jr);
    }
    if (!p.proposals.empty()) {
      ojson props = ojson::array();
      for (const auto& q : p.proposals) {
        props.push_back({{"bbox", bbox_json(q.bbox)},
                         {"label", label_name(q.label)},
                         {"confidence", q.confidence}});
      }
      jp["proposals"] = std::move(props);
    }
    pages.push_back(std::move(jp));
  }
  root["pages"] = std::move(pages);
  return root.dump(1) + "\n";
}

ParsedDocument InterchangeBackend::load(const InputSource& src,
                                        std::string_view bytes,
                                        std::optional<int> max_pages) const {
  std::filesystem::path base_dir;
  if (const auto* fp = std::get_if<FilePath>(&src)) {
    base_dir = fp->path.parent_path();
  }
  return parse_interchange(bytes, source_name(src), max_pages, base_dir);
}

PageImage InterchangeBackend::render(const ParsedPage& page, int dpi) const {
  return render_page(page, dpi);
}

ParsedDocument load_document(const InputSource& src,
                             std::optional<int> max_pages) {
  const std::string bytes = read_source(src);
  return InterchangeBackend{}.load(src, bytes, max_pages);
}

PageImage render_page(const ParsedPage& page, int dpi) {
  if (dpi <= 0) throw BackendError(fmt::format("invalid dpi {}", dpi));
  PageImage img;
  img.dpi = dpi;
  img.width = scaled_extent(page.width, dpi);
  img.height = scaled_extent(page.height, dpi);
  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 255);

  if (page.raster) {
    const std::string data = page.raster->path.empty()
                                 ? base64_decode(page.raster->base64)
                                 : read_file(page.raster->path, std::nullopt);
    const PageImage src = decode_pgm(data);
    // Nearest-neighbour resample onto the requested grid.
    for (int y = 0; y < img.height; ++y) {
      const int sy = std::min(
          src.height - 1,
          static_cast<int>(static_cast<long long>(y) * src.height / img.height));
      for (int x = 0; x < img.width; ++x) {
        const int sx = std::min(
            src.width - 1,
            static_cast<int>(static_cast<long long>(x) * src.width / img.width));
        img.pixels[static_cast<std::size_t>(y) * img.width + x] = src.at(sx, sy);
      }
    }
    return img;
  }

  const double scale = dpi / 72.0;
  for (const auto& t : page.tokens) {
    const int x0 = std::clamp(static_cast<int>(std::floor(t.bbox.left * scale)),
                              0, img.width);
    const int x1 = std::clamp(static_cast<int>(std::ceil(t.bbox.right * scale)),
                              0, img.width);
    const int y0 = std::clamp(static_cast<int>(std::floor(t.bbox.top * scale)),
                              0, img.height);
    const int y1 = std::clamp(
        static_cast<int>(std::ceil(t.bbox.bottom * scale)), 0, img.height);
    for (int y = y0; y < y1; ++y) {
      std::fill_n(img.pixels.begin() +
                      static_cast<std::ptrdiff_t>(y) * img.width + x0,
                  x1 - x0, std::uint8_t{0});
    }
  }
  return img;
}

BackendRegistry& BackendRegistry::global() {
  static BackendRegistry registry = [] {
    BackendRegistry r;
    r.add(std::make_shared<InterchangeBackend>());
    return r;
  }();
  return registry;
}

namespace {
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void BackendRegistry::add(std::shared_ptr<const Backend> backend) {
  std::lock_guard lock(registry_mutex());
  const std::string_view name = backend->name();
  auto it = std::find_if(backends_.begin(), backends_.end(),
                         [&](const auto& b) { return b->name() == name; });
  if (it != backends_.end()) {
    *it = std::move(backend);
  } else {
    backends_.push_back(std::move(backend));
  }
}

std::shared_ptr<const Backend> BackendRegistry::find(
    std::string_view name) const {
  std::lock_guard lock(registry_mutex());
  for (const auto& b : backends_) {
    if (b->name() == name) return b;
  }
  return nullptr;
}

std::vector<std::string> BackendRegistry::names() const {
  std::lock_guard lock(registry_mutex());
  std::vector<std::string> out;
  for (const auto& b : backends_) out.emplace_back(b->name());
  return out;
}

}  // namespace docforge
