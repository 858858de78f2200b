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

#include "docforge/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "docforge/error.hpp"

namespace docforge {
namespace {

using json = nlohmann::json;
using Setter = std::function<void(const json&)>;

template <typename T>
Setter bind(T& field) {
  return [&field](const json& v) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError("expected an integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError("expected a number");
    } else {
      if (!v.is_string()) throw ConfigError("expected a string");
    }
    field = v.get<T>();
  };
}

template <typename T>
Setter bind_optional(std::optional<T>& field) {
  return [&field](const json& v) {
    if (v.is_null()) {
      field.reset();
      return;
    }
    T value{};
    bind(value)(v);
    field = value;
  };
}

void apply(const json& section, const std::string& name,
           const std::map<std::string, Setter>& setters) {
  if (!section.is_object()) throw ConfigError("config '" + name + "' must be an object");
  for (const auto& [key, value] : section.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("unknown config key '" + name + "." + key + "'");
    }
    try {
      it->second(value);
    } catch (const ConfigError& e) {
      throw ConfigError("config '" + name + "." + key + "': " + e.what());
    }
  }
}

}  // namespace

PipelineConfig parse_pipeline_config(std::string_view json_text,
                                     PipelineConfig base) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");

  PipelineConfig cfg = std::move(base);
  int fetch_timeout_s = static_cast<int>(cfg.fetch_timeout.count());
  const std::map<std::string, Setter> pipeline = {
      {"enable_table_structure", bind(cfg.enable_table_structure)},
      {"enable_ocr", bind(cfg.enable_ocr)},
      {"max_pages", bind_optional(cfg.max_pages)},
      {"max_file_bytes", bind_optional(cfg.max_file_bytes)},
      {"thread_budget", bind_optional(cfg.thread_budget)},
      {"backend", bind(cfg.backend)},
      {"layout_dpi", bind(cfg.layout_dpi)},
      {"ocr_dpi", bind(cfg.ocr_dpi)},
      {"fetch_timeout_s", bind(fetch_timeout_s)},
  };
  LayoutConfig& l = cfg.layout;
  const std::map<std::string, Setter> layout = {
      {"line_overlap", bind(l.line_overlap)},
      {"line_split_gap", bind(l.line_split_gap)},
      {"block_gap_factor", bind(l.block_gap_factor)},
      {"block_min_hoverlap", bind(l.block_min_hoverlap)},
      {"header_band", bind(l.header_band)},
      {"footer_band", bind(l.footer_band)},
      {"section_font_ratio", bind(l.section_font_ratio)},
      {"section_max_lines", bind(l.section_max_lines)},
      {"table_gap_chars", bind(l.table_gap_chars)},
      {"table_min_gaps", bind(l.table_min_gaps)},
      {"table_min_lines", bind(l.table_min_lines)},
      {"nms_iou", bind(l.nms_iou)},
      {"nms_containment", bind(l.nms_containment)},
      {"assign_min_overlap", bind(l.assign_min_overlap)},
  };
  TableConfig& t = cfg.table;
  const std::map<std::string, Setter> table = {
      {"line_overlap", bind(t.line_overlap)},
      {"fragment_gap_chars", bind(t.fragment_gap_chars)},
      {"col_gap_factor", bind(t.col_gap_factor)},
      {"col_gap_floor", bind(t.col_gap_floor)},
      {"row_gap_factor", bind(t.row_gap_factor)},
      {"span_min_overlap", bind(t.span_min_overlap)},
      {"match_min_overlap", bind(t.match_min_overlap)},
      {"row_header_min_frac", bind(t.row_header_min_frac)},
  };
  const std::map<std::string, const std::map<std::string, Setter>*> sections = {
      {"pipeline", &pipeline}, {"layout", &layout}, {"table", &table}};

  for (const auto& [key, value] : root.items()) {
    const auto it = sections.find(key);
    if (it == sections.end()) throw ConfigError("unknown config section '" + key + "'");
    apply(value, key, *it->second);
  }
  cfg.fetch_timeout = std::chrono::seconds(fetch_timeout_s);
  cfg.validate();
  return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path,
                                    PipelineConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pipeline_config(ss.str(), std::move(base));
}

}  // namespace docforge
