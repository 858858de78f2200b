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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docforge/backend.hpp"
#include "docforge/layout.hpp"
#include "docforge/model.hpp"
#include "docforge/page_state.hpp"
#include "docforge/tablestruct.hpp"

namespace docforge {

// Text recognition over a page raster. No engine ships with the library; the
// OCR stage runs only the rendering path when none is configured.
class OcrEngine {
 public:
  virtual ~OcrEngine() = default;
  virtual std::vector<TextToken> recognize(const PageImage& image,
                                           const ParsedPage& page) const = 0;
};

struct PipelineConfig {
  bool enable_table_structure = true;
  bool enable_ocr = false;
  std::optional<int> max_pages;
  std::optional<std::uint64_t> max_file_bytes;
  // Unset: OMP_NUM_THREADS if present, else 4.
  std::optional<int> thread_budget;
  std::string backend = "interchange";
  int layout_dpi = 72;
  int ocr_dpi = 216;
  std::chrono::seconds fetch_timeout{30};
  LayoutConfig layout;
  TableConfig table;
  std::shared_ptr<const OcrEngine> ocr_engine;

  // Throws ConfigError.
  void validate() const;
  int effective_thread_budget() const;
};

enum class ConversionStatus { kSuccess, kPartial, kFailure };

std::string_view status_name(ConversionStatus status);

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct ConversionResult {
  Document document;
  ConversionStatus status = ConversionStatus::kSuccess;
  std::vector<std::string> warnings;
  // Set on failure.
  std::optional<std::string> error;
  // backend, each stage, assemble. Stage entries share the wall time of the
  // page-parallel section in proportion to their busy time, so the entries
  // sum to the conversion wall time.
  std::vector<StageTiming> timings;
};

StageContract make_layout_stage(const PipelineConfig& cfg,
                                std::shared_ptr<const Backend> backend);
StageContract make_table_stage(const PipelineConfig& cfg);
StageContract make_ocr_stage(const PipelineConfig& cfg,
                             std::shared_ptr<const Backend> backend);

class Pipeline {
 public:
  Pipeline(PipelineConfig cfg, std::vector<StageContract> stages);

  const PipelineConfig& config() const { return cfg_; }
  const std::vector<StageContract>& stages() const { return stages_; }
  std::vector<std::string> stage_names() const;

  // Push every page through the stage chain, up to the thread budget at a
  // time. The result is ordered by page number. `busy_seconds` receives the
  // summed per-stage time over all pages when non-null.
  std::vector<PageState> process(const ParsedDocument& doc,
                                 std::vector<double>* busy_seconds = nullptr) const;

  ConversionResult convert(const InputSource& src) const;
  std::vector<ConversionResult> convert_batch(
      std::span<const InputSource> srcs) const;

 private:
  PipelineConfig cfg_;
  std::vector<StageContract> stages_;
};

// Default chain is layout, then table structure and OCR when enabled. A
// supplied override replaces the chain. Throws ConfigError on an invalid
// config, an empty override, or duplicate stage names.
Pipeline build_pipeline(
    const PipelineConfig& cfg,
    std::optional<std::vector<StageContract>> stages = std::nullopt);

ConversionResult convert_single(const InputSource& src,
                                const PipelineConfig& cfg);
std::vector<ConversionResult> convert_batch(std::span<const InputSource> srcs,
                                            const PipelineConfig& cfg);

}  // namespace docforge
