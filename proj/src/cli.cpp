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

#include "docforge/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <vector>

#include <CLI11.hpp>

#include "docforge/bench.hpp"
#include "docforge/config.hpp"
#include "docforge/pipeline.hpp"
#include "docforge/serialize.hpp"

namespace docforge {
namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

InputSource to_source(const std::string& arg) {
  if (arg.starts_with("http://") || arg.starts_with("https://")) return Url{arg};
  return FilePath{arg};
}

bool write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  f << data;
  return static_cast<bool>(f);
}

}  // namespace

int cli_main(std::span<const std::string> args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"docforge: convert page interchange files to Markdown or JSON"};
  app.name("docforge");
  app.require_subcommand(1);

  std::vector<std::string> sources;
  std::string to = "md";
  std::string out_dir = ".";
  bool no_table = false;
  bool ocr = false;
  bool no_ocr = false;
  std::optional<int> max_pages;
  std::optional<std::uint64_t> max_bytes;
  std::optional<int> threads;
  std::optional<std::string> backend;
  std::optional<std::string> config_path;

  auto* convert = app.add_subcommand("convert", "Convert documents");
  convert->add_option("sources", sources, "Input files or URLs")->required();
  convert->add_option("--to", to, "Output format")
      ->check(CLI::IsMember({"md", "json"}))
      ->capture_default_str();
  convert->add_option("--out", out_dir, "Output directory")->capture_default_str();
  convert->add_flag("--no-table-structure", no_table, "Skip table structure");
  auto* ocr_on = convert->add_flag("--ocr", ocr, "Enable the OCR stage");
  convert->add_flag("--no-ocr", no_ocr, "Disable the OCR stage")->excludes(ocr_on);
  convert->add_option("--max-pages", max_pages)->check(CLI::PositiveNumber);
  convert->add_option("--max-bytes", max_bytes)->check(CLI::PositiveNumber);
  convert->add_option("--threads", threads)->check(CLI::PositiveNumber);
  convert->add_option("--backend", backend);
  convert->add_option("--config", config_path, "JSON threshold configuration")
      ->check(CLI::ExistingFile);

  std::string corpus;
  std::vector<int> bench_threads = {4, 16};
  std::vector<std::string> bench_backends = {"interchange"};
  std::optional<std::string> csv_path;
  auto* bench = app.add_subcommand("bench", "Measure corpus throughput");
  bench->add_option("corpus", corpus, "Directory of .dpages.json files")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench->add_option("--threads", bench_threads)
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--backends", bench_backends)->delimiter(',')->capture_default_str();
  bench->add_option("--out", csv_path, "CSV destination (default stdout)");
  bench->add_option("--config", config_path)->check(CLI::ExistingFile);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  PipelineConfig cfg;
  try {
    if (config_path) cfg = load_pipeline_config(*config_path, cfg);
    if (no_table) cfg.enable_table_structure = false;
    if (ocr) cfg.enable_ocr = true;
    if (no_ocr) cfg.enable_ocr = false;
    if (max_pages) cfg.max_pages = max_pages;
    if (max_bytes) cfg.max_file_bytes = max_bytes;
    if (threads) cfg.thread_budget = threads;
    if (backend) cfg.backend = *backend;
    cfg.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (*bench) {
    try {
      const auto reports =
          run_bench(corpus, BenchMatrix{bench_threads, bench_backends}, cfg);
      const std::string csv = emit_report(reports);
      if (csv_path) {
        if (!write_file(*csv_path, csv)) {
          err << "error: cannot write '" << *csv_path << "'\n";
          return kExitFailure;
        }
      } else {
        out << csv;
      }
      bool failed = false;
      for (const auto& r : reports) {
        if (r.failed) {
          err << "error: " << r.backend << " at " << r.thread_budget
              << " threads had failed conversions\n";
          failed = true;
        }
      }
      return failed ? kExitFailure : 0;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitFailure;
    }
  }

  std::optional<Pipeline> pipeline;
  try {
    pipeline.emplace(build_pipeline(cfg));
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    err << "error: cannot create '" << out_dir << "': " << ec.message() << "\n";
    return kExitFailure;
  }

  bool any_failed = false;
  for (const auto& arg : sources) {
    const InputSource src = to_source(arg);
    const ConversionResult result = pipeline->convert(src);
    for (const auto& w : result.warnings) err << "warning: " << arg << ": " << w << "\n";
    if (result.status == ConversionStatus::kFailure) {
      err << "error: " << arg << ": " << result.error.value_or("conversion failed") << "\n";
      any_failed = true;
      continue;
    }
    try {
      const std::string body =
          to == "json" ? to_json(result.document) : to_markdown(result.document);
      const auto path = std::filesystem::path(out_dir) /
                        (source_name(src) + (to == "json" ? ".json" : ".md"));
      if (!write_file(path, body)) {
        err << "error: cannot write '" << path.string() << "'\n";
        any_failed = true;
        continue;
      }
      out << arg << " -> " << path.string() << " ("
          << status_name(result.status) << ")\n";
    } catch (const Error& e) {
      err << "error: " << arg << ": " << e.what() << "\n";
      any_failed = true;
    }
  }
  return any_failed ? kExitFailure : 0;
}

}  // namespace docforge
