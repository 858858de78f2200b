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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "docforge/model.hpp"

namespace docforge {

struct FilePath {
  std::filesystem::path path;
};

struct RawBytes {
  std::string bytes;
  std::string name = "document";
};

struct Url {
  std::string url;
};

using InputSource = std::variant<FilePath, RawBytes, Url>;

// Document name derived from a source: file stem, RawBytes::name, or the last
// URL path segment. The ".dpages.json" suffix is stripped.
std::string source_name(const InputSource& src);

struct ParsedDocument {
  std::string name;
  std::vector<ParsedPage> pages;
  // Non-fatal notes such as clamped token boxes. Not part of equality.
  std::vector<std::string> warnings;

  friend bool operator==(const ParsedDocument& a, const ParsedDocument& b) {
    return a.name == b.name && a.pages == b.pages;
  }
};

// 8-bit grayscale raster, row-major.
struct PageImage {
  int width = 0;
  int height = 0;
  int dpi = 72;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
};

struct FetchOptions {
  std::chrono::seconds timeout{30};
  int max_redirects = 5;
  std::optional<std::uint64_t> max_bytes;
};

inline constexpr std::string_view kInterchangeTag = "docforge-pages";
inline constexpr int kInterchangeVersion = 1;
inline constexpr std::string_view kInterchangeExtension = ".dpages.json";

// Read the raw bytes behind a source. Throws BackendError when the source
// cannot be resolved or exceeds `max_bytes` ("input size limit exceeded").
std::string read_source(const InputSource& src, const FetchOptions& opts = {});

// Identify the payload format from a bounded prefix. Returns kInterchangeTag
// or "unknown".
std::string_view probe_format(std::string_view bytes);

// Parse an interchange payload. Relative raster paths resolve against
// `base_dir`.
ParsedDocument parse_interchange(std::string_view bytes, std::string name,
                                 std::optional<int> max_pages = std::nullopt,
                                 const std::filesystem::path& base_dir = {});

std::string write_interchange(const ParsedDocument& doc);

ParsedDocument load_document(const InputSource& src,
                             std::optional<int> max_pages = std::nullopt);

// Raster of `page` at `dpi`: the embedded image rescaled when present,
// otherwise a white page with black token boxes. Output size is
// ceil(width*dpi/72) x ceil(height*dpi/72).
PageImage render_page(const ParsedPage& page, int dpi);

// Adapter contract for page backends.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string_view name() const = 0;
  virtual ParsedDocument load(const InputSource& src, std::string_view bytes,
                              std::optional<int> max_pages) const = 0;
  virtual PageImage render(const ParsedPage& page, int dpi) const = 0;
};

class InterchangeBackend final : public Backend {
 public:
  std::string_view name() const override { return "interchange"; }
  ParsedDocument load(const InputSource& src, std::string_view bytes,
                      std::optional<int> max_pages) const override;
  PageImage render(const ParsedPage& page, int dpi) const override;
};

// Name -> backend map. The global registry starts with "interchange".
class BackendRegistry {
 public:
  static BackendRegistry& global();

  void add(std::shared_ptr<const Backend> backend);
  std::shared_ptr<const Backend> find(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::vector<std::shared_ptr<const Backend>> backends_;
};

}  // namespace docforge
