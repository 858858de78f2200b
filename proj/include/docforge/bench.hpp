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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "docforge/error.hpp"
#include "docforge/pipeline.hpp"

namespace docforge {

class BenchError : public Error {
 public:
  using Error::Error;
};

struct BenchReport {
  std::string corpus;
  std::string backend;
  int thread_budget = 0;
  std::int64_t page_count = 0;
  // Wall clock over the whole corpus, conversion and serialization included.
  double tts_s = 0;
  double pages_per_s = 0;
  std::uint64_t peak_mem_bytes = 0;
  bool failed = false;
  // FNV-1a over every document's JSON and Markdown, in corpus order.
  std::uint64_t output_digest = 0;
};

// pages / tts rounded to 2 decimals. Throws BenchError when tts_s <= 0.
double compute_throughput(std::int64_t page_count, double tts_s);

struct BenchMatrix {
  std::vector<int> thread_budgets = {4, 16};
  std::vector<std::string> backends = {"interchange"};
};

// Every *.dpages.json directly inside `dir`, sorted by name.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir);

// One report per (backend, thread budget), backends outermost. OCR is forced
// off. Throws BenchError for an empty corpus; a failing conversion marks its
// report failed and the sweep continues.
std::vector<BenchReport> run_bench(const std::filesystem::path& corpus_dir,
                                   const BenchMatrix& matrix,
                                   PipelineConfig base = {});

// CSV with header corpus,backend,threads,pages,tts_s,pages_per_s,peak_mem_mb.
std::string emit_report(std::span<const BenchReport> reports);

std::uint64_t current_rss_bytes();

// Polls resident set size on a background thread and keeps the maximum.
class RssSampler {
 public:
  explicit RssSampler(
      std::chrono::milliseconds interval = std::chrono::milliseconds(100));
  ~RssSampler();
  RssSampler(const RssSampler&) = delete;
  RssSampler& operator=(const RssSampler&) = delete;

  // Stops polling, takes a final sample and returns the peak.
  std::uint64_t stop();

 private:
  void sample();

  std::chrono::milliseconds interval_;
  std::atomic<std::uint64_t> peak_{0};
  std::jthread thread_;
};

std::uint64_t fnv1a(std::string_view data,
                    std::uint64_t seed = 14695981039346656037ULL);

}  // namespace docforge
