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

#include "docforge/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include <fmt/format.h>

#include "docforge/assemble.hpp"
#include "docforge/error.hpp"

namespace docforge {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::shared_ptr<const Backend> resolve_backend(const std::string& name) {
  auto backend = BackendRegistry::global().find(name);
  if (!backend) throw ConfigError("unknown backend '" + name + "'");
  return backend;
}

}  // namespace

void PipelineConfig::validate() const {
  if (thread_budget && *thread_budget < 1) {
    throw ConfigError("thread budget must be at least 1");
  }
  if (layout_dpi <= 0 || ocr_dpi <= 0) {
    throw ConfigError("dpi values must be positive");
  }
  if (max_pages && *max_pages < 1) {
    throw ConfigError("max_pages must be at least 1");
  }
  if (backend.empty()) throw ConfigError("backend name is empty");
}

int PipelineConfig::effective_thread_budget() const {
  if (thread_budget) return *thread_budget;
  if (const char* env = std::getenv("OMP_NUM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) {
      return static_cast<int>(v);
    }
  }
  return 4;
}

std::string_view status_name(ConversionStatus status) {
  switch (status) {
    case ConversionStatus::kSuccess:
      return "success";
    case ConversionStatus::kPartial:
      return "partial";
    case ConversionStatus::kFailure:
      break;
  }
  return "failure";
}

StageContract make_layout_stage(const PipelineConfig& cfg,
                                std::shared_ptr<const Backend> backend) {
  return {"layout",
          [layout = cfg.layout, dpi = cfg.layout_dpi,
           backend = std::move(backend)](PageStream pages) {
            for (auto& p : pages) {
              if (p.predictions.layout) continue;
              // A raster-based detector would consume this image; the
              // geometric one only needs the tokens.
              (void)backend->render(*p.parsed, dpi);
              p.predictions.layout = analyze_layout(*p.parsed, layout);
            }
            return pages;
          }};
}

StageContract make_table_stage(const PipelineConfig& cfg) {
  return {"tablestruct", [table_cfg = cfg.table](PageStream pages) {
            for (auto& p : pages) {
              if (p.predictions.tables) continue;
              std::map<int, TableStructure> tables;
              if (p.predictions.layout) {
                std::unordered_map<TokenId, const TextToken*> by_id;
                for (const auto& t : p.parsed->tokens) by_id[t.id] = &t;
                for (const auto& c : *p.predictions.layout) {
                  if (c.proposal.label != DocItemLabel::kTable) continue;
                  std::vector<TextToken> tokens;
                  for (TokenId id : c.token_ids) tokens.push_back(*by_id.at(id));
                  try {
                    std::vector<TokenId> dropped;
                    auto s = infer_table_structure(c.proposal.bbox, tokens,
                                                   table_cfg);
                    s = match_back(s, tokens, table_cfg, &dropped);
                    for (TokenId id : dropped) {
                      p.predictions.warnings.push_back(fmt::format(
                          "page {}: table {}: token {} matched no cell",
                          p.page_no(), c.cluster_id, id));
                    }
                    tables.emplace(c.cluster_id, std::move(s));
                  } catch (const TableStructureError& e) {
                    p.predictions.warnings.push_back(
                        fmt::format("page {}: table {}: {}", p.page_no(),
                                    c.cluster_id, e.what()));
                    tables.emplace(c.cluster_id, TableStructure{1, 1, {}});
                  }
                }
              }
              p.predictions.tables = std::move(tables);
            }
            return pages;
          }};
}

StageContract make_ocr_stage(const PipelineConfig& cfg,
                             std::shared_ptr<const Backend> backend) {
  return {"ocr", [dpi = cfg.ocr_dpi, engine = cfg.ocr_engine,
                  backend = std::move(backend)](PageStream pages) {
            for (auto& p : pages) {
              if (p.predictions.ocr_tokens) continue;
              const PageImage image = backend->render(*p.parsed, dpi);
              p.predictions.ocr_tokens =
                  engine ? engine->recognize(image, *p.parsed)
                         : std::vector<TextToken>{};
            }
            return pages;
          }};
}

Pipeline::Pipeline(PipelineConfig cfg, std::vector<StageContract> stages)
    : cfg_(std::move(cfg)), stages_(std::move(stages)) {}

std::vector<std::string> Pipeline::stage_names() const {
  std::vector<std::string> names;
  for (const auto& s : stages_) names.push_back(s.name);
  return names;
}

std::vector<PageState> Pipeline::process(const ParsedDocument& doc,
                                         std::vector<double>* busy_seconds) const {
  const std::size_t n = doc.pages.size();
  std::vector<PageState> states(n);
  for (std::size_t i = 0; i < n; ++i) {
    states[i].parsed = std::make_shared<const ParsedPage>(doc.pages[i]);
  }
  std::vector<std::vector<double>> busy(n, std::vector<double>(stages_.size(), 0));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      PageState& state = states[i];
      std::size_t si = 0;
      try {
        for (; si < stages_.size(); ++si) {
          const auto start = Clock::now();
          PageStream one;
          one.push_back(state);
          one = run_stage(stages_[si], std::move(one));
          state = std::move(one.front());
          busy[i][si] = seconds_since(start);
        }
      } catch (const std::exception& e) {
        state.predictions = {};
        state.failure = fmt::format("page {}: stage '{}' failed: {}",
                                    state.page_no(), stages_[si].name, e.what());
      }
    }
  };

  const auto workers = static_cast<std::size_t>(
      std::max(1, std::min<int>(cfg_.effective_thread_budget(),
                                static_cast<int>(std::max<std::size_t>(n, 1)))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  if (busy_seconds) {
    busy_seconds->assign(stages_.size(), 0);
    for (const auto& page : busy) {
      for (std::size_t s = 0; s < page.size(); ++s) (*busy_seconds)[s] += page[s];
    }
  }
  std::stable_sort(states.begin(), states.end(),
                   [](const PageState& a, const PageState& b) {
                     return a.page_no() < b.page_no();
                   });
  return states;
}

ConversionResult Pipeline::convert(const InputSource& src) const {
  const auto start = Clock::now();
  ConversionResult result;
  result.document.name = source_name(src);
  auto fail = [&](const std::string& message) {
    result.status = ConversionStatus::kFailure;
    result.error = message;
    result.document = Document{};
    result.document.name = source_name(src);
    return result;
  };

  ParsedDocument parsed;
  try {
    const auto backend = resolve_backend(cfg_.backend);
    FetchOptions fetch;
    fetch.timeout = cfg_.fetch_timeout;
    fetch.max_bytes = cfg_.max_file_bytes;
    const std::string bytes = read_source(src, fetch);
    parsed = backend->load(src, bytes, cfg_.max_pages);
  } catch (const Error& e) {
    return fail(e.what());
  }
  const double backend_s = seconds_since(start);
  result.warnings = parsed.warnings;

  const auto pages_start = Clock::now();
  std::vector<double> busy;
  const auto pages = process(parsed, &busy);
  const double pages_s = seconds_since(pages_start);

  if (cfg_.enable_ocr && !cfg_.ocr_engine) {
    result.warnings.push_back("OCR enabled but no OCR engine is configured");
  }
  bool partial = false;
  for (const auto& p : pages) {
    result.warnings.insert(result.warnings.end(), p.predictions.warnings.begin(),
                           p.predictions.warnings.end());
    if (p.failure) {
      partial = true;
      result.warnings.push_back(*p.failure);
    }
  }

  const auto assemble_start = Clock::now();
  AssembleOptions opts;
  opts.column_gap = cfg_.layout.line_split_gap;
  opts.table_structure_enabled = cfg_.enable_table_structure;
  try {
    result.document =
        assemble_document(parsed.name, pages, opts, result.warnings);
  } catch (const Error& e) {
    return fail(e.what());
  }
  const double assemble_s = seconds_since(assemble_start);

  result.status = partial ? ConversionStatus::kPartial : ConversionStatus::kSuccess;
  result.timings.push_back({"backend", backend_s});
  double total_busy = 0;
  for (double b : busy) total_busy += b;
  for (std::size_t s = 0; s < stages_.size(); ++s) {
    const double share = total_busy > 0
                             ? busy[s] / total_busy
                             : 1.0 / static_cast<double>(stages_.size());
    result.timings.push_back({stages_[s].name, pages_s * share});
  }
  result.timings.push_back({"assemble", assemble_s});
  return result;
}

std::vector<ConversionResult> Pipeline::convert_batch(
    std::span<const InputSource> srcs) const {
  std::vector<ConversionResult> out;
  out.reserve(srcs.size());
  for (const auto& src : srcs) out.push_back(convert(src));
  return out;
}

Pipeline build_pipeline(const PipelineConfig& cfg,
                        std::optional<std::vector<StageContract>> stages) {
  cfg.validate();
  if (stages) {
    if (stages->empty()) throw ConfigError("stage override chain is empty");
    std::set<std::string> names;
    for (const auto& s : *stages) {
      if (!names.insert(s.name).second) {
        throw ConfigError("duplicate stage name '" + s.name + "'");
      }
      if (!s.transform) throw ConfigError("stage '" + s.name + "' has no transform");
    }
    return Pipeline(cfg, std::move(*stages));
  }
  const auto backend = resolve_backend(cfg.backend);
  std::vector<StageContract> chain;
  chain.push_back(make_layout_stage(cfg, backend));
  if (cfg.enable_table_structure) chain.push_back(make_table_stage(cfg));
  if (cfg.enable_ocr) chain.push_back(make_ocr_stage(cfg, backend));
  return Pipeline(cfg, std::move(chain));
}

ConversionResult convert_single(const InputSource& src,
                                const PipelineConfig& cfg) {
  try {
    return build_pipeline(cfg).convert(src);
  } catch (const ConfigError& e) {
    ConversionResult r;
    r.status = ConversionStatus::kFailure;
    r.error = e.what();
    r.document.name = source_name(src);
    return r;
  }
}

std::vector<ConversionResult> convert_batch(std::span<const InputSource> srcs,
                                            const PipelineConfig& cfg) {
  try {
    return build_pipeline(cfg).convert_batch(srcs);
  } catch (const ConfigError& e) {
    std::vector<ConversionResult> out;
    for (const auto& src : srcs) {
      ConversionResult r;
      r.status = ConversionStatus::kFailure;
      r.error = e.what();
      r.document.name = source_name(src);
      out.push_back(std::move(r));
    }
    return out;
  }
}

}  // namespace docforge
