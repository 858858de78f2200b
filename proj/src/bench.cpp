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

#include "docforge/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <unistd.h>

#include <fmt/format.h>

#include "docforge/serialize.hpp"

namespace docforge {

double compute_throughput(std::int64_t page_count, double tts_s) {
  if (!(tts_s > 0)) {
    throw BenchError(fmt::format("time-to-solution must be positive, got {}", tts_s));
  }
  return std::round(static_cast<double>(page_count) / tts_s * 100.0) / 100.0;
}

std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.ends_with(kInterchangeExtension)) {
      files.push_back(entry.path());
    }
  }
  if (ec) throw BenchError("cannot read corpus '" + dir.string() + "': " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<BenchReport> run_bench(const std::filesystem::path& corpus_dir,
                                   const BenchMatrix& matrix,
                                   PipelineConfig base) {
  const auto files = list_corpus(corpus_dir);
  if (files.empty()) {
    throw BenchError("corpus '" + corpus_dir.string() + "' is empty");
  }
  std::vector<InputSource> sources;
  for (const auto& f : files) sources.push_back(FilePath{f});
  const std::string corpus = corpus_dir.filename().empty()
                                 ? corpus_dir.parent_path().filename().string()
                                 : corpus_dir.filename().string();

  std::vector<BenchReport> reports;
  for (const auto& backend : matrix.backends) {
    for (int threads : matrix.thread_budgets) {
      BenchReport report;
      report.corpus = corpus;
      report.backend = backend;
      report.thread_budget = threads;

      PipelineConfig cfg = base;
      cfg.backend = backend;
      cfg.thread_budget = threads;
      cfg.enable_ocr = false;

      RssSampler sampler;
      const auto start = std::chrono::steady_clock::now();
      try {
        const Pipeline pipeline = build_pipeline(cfg);
        std::uint64_t digest = fnv1a("");
        for (const auto& src : sources) {
          const ConversionResult r = pipeline.convert(src);
          if (r.status == ConversionStatus::kFailure) {
            report.failed = true;
            continue;
          }
          report.page_count += static_cast<std::int64_t>(r.document.pages.size());
          digest = fnv1a(to_json(r.document), digest);
          digest = fnv1a(to_markdown(r.document), digest);
        }
        report.output_digest = digest;
      } catch (const Error&) {
        report.failed = true;
      }
      report.tts_s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      report.peak_mem_bytes = sampler.stop();
      report.pages_per_s = compute_throughput(report.page_count, report.tts_s);
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

std::string emit_report(std::span<const BenchReport> reports) {
  std::string out = "corpus,backend,threads,pages,tts_s,pages_per_s,peak_mem_mb\n";
  for (const auto& r : reports) {
    out += fmt::format("{},{},{},{},{:.2f},{:.2f},{:.2f}\n", r.corpus, r.backend,
                       r.thread_budget, r.page_count, r.tts_s, r.pages_per_s,
                       static_cast<double>(r.peak_mem_bytes) / (1024.0 * 1024.0));
  }
  return out;
}

std::uint64_t current_rss_bytes() {
  std::ifstream statm("/proc/self/statm");
  std::uint64_t size = 0, resident = 0;
  if (!(statm >> size >> resident)) return 0;
  return resident * static_cast<std::uint64_t>(sysconf(_SC_PAGESIZE));
}

RssSampler::RssSampler(std::chrono::milliseconds interval) : interval_(interval) {
  sample();
  thread_ = std::jthread([this](std::stop_token stop) {
    while (!stop.stop_requested()) {
      std::this_thread::sleep_for(interval_);
      sample();
    }
  });
}

RssSampler::~RssSampler() { stop(); }

void RssSampler::sample() {
  const std::uint64_t now = current_rss_bytes();
  std::uint64_t prev = peak_.load();
  while (now > prev && !peak_.compare_exchange_weak(prev, now)) {
  }
}

std::uint64_t RssSampler::stop() {
  if (thread_.joinable()) {
    thread_.request_stop();
    thread_.join();
  }
  sample();
  return peak_.load();
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace docforge
