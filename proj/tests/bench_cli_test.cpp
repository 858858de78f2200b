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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "docforge/backend.hpp"
#include "docforge/bench.hpp"
#include "docforge/cli.hpp"
#include "docforge/corpus.hpp"
#include "docforge/serialize.hpp"

namespace docforge {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = DOCFORGE_FIXTURE_DIR;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("docforge-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

TEST(Throughput, Examples) {
  EXPECT_DOUBLE_EQ(compute_throughput(225, 177), 1.27);
  EXPECT_DOUBLE_EQ(compute_throughput(225, 92), 2.45);
  EXPECT_DOUBLE_EQ(compute_throughput(0, 12), 0.0);
  EXPECT_DOUBLE_EQ(compute_throughput(240, 120), 2.0);
}

TEST(Throughput, NonPositiveTimeThrows) {
  EXPECT_THROW(compute_throughput(10, 0), BenchError);
  EXPECT_THROW(compute_throughput(10, -1), BenchError);
}

TEST(EmitReport, HeaderOnly) {
  EXPECT_EQ(emit_report({}), "corpus,backend,threads,pages,tts_s,pages_per_s,peak_mem_mb\n");
}

TEST(EmitReport, Row) {
  BenchReport r;
  r.corpus = "papers";
  r.backend = "interchange";
  r.thread_budget = 4;
  r.page_count = 225;
  r.tts_s = 177;
  r.pages_per_s = 1.27;
  r.peak_mem_bytes = 3 * 1024 * 1024 / 2;
  const std::vector<BenchReport> rows = {r};
  const std::string csv = emit_report(rows);
  EXPECT_NE(csv.find("\npapers,interchange,4,225,177.00,1.27,1.50\n"), std::string::npos) << csv;
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a(""), 14695981039346656037ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
}

TEST(RssSampler, SeesCurrentUsage) {
  EXPECT_GT(current_rss_bytes(), 0u);
  RssSampler sampler(std::chrono::milliseconds(5));
  EXPECT_GE(sampler.stop(), 1u);
}

TEST(ListCorpus, SortedAndFiltered) {
  TempDir dir;
  spit(dir.path() / "b.dpages.json", "{}");
  spit(dir.path() / "a.dpages.json", "{}");
  spit(dir.path() / "notes.txt", "x");
  const auto files = list_corpus(dir.path());
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename(), "a.dpages.json");
  EXPECT_EQ(files[1].filename(), "b.dpages.json");
}

TEST(RunBench, MatrixOrderAndDigest) {
  TempDir dir;
  corpus::write_corpus(dir.path(), {2, 3, 5});
  const auto reports = run_bench(dir.path(), BenchMatrix{{1, 4}, {"interchange"}});
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].thread_budget, 1);
  EXPECT_EQ(reports[1].thread_budget, 4);
  for (const auto& r : reports) {
    EXPECT_EQ(r.page_count, 6);
    EXPECT_FALSE(r.failed);
    EXPECT_GT(r.tts_s, 0.0);
    EXPECT_GT(r.peak_mem_bytes, 0u);
  }
  EXPECT_EQ(reports[0].output_digest, reports[1].output_digest);
  const auto again = run_bench(dir.path(), BenchMatrix{{4}, {"interchange"}});
  EXPECT_EQ(again[0].output_digest, reports[0].output_digest);
}

TEST(RunBench, EmptyCorpusThrows) {
  TempDir dir;
  EXPECT_THROW(run_bench(dir.path(), {}), BenchError);
}

TEST(RunBench, BrokenFileMarksFailure) {
  TempDir dir;
  corpus::write_corpus(dir.path(), {1, 2, 5});
  spit(dir.path() / "zz.dpages.json", "{oops");
  const auto reports = run_bench(dir.path(), BenchMatrix{{2}, {"interchange"}});
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_TRUE(reports[0].failed);
  EXPECT_EQ(reports[0].page_count, 2);
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ConvertToMarkdown) {
  TempDir dir;
  const auto r = run({"convert", (kFixtures / "doclaynet_title.dpages.json").string(), "--to", "md", "--out",
                      dir.path().string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string md = slurp(dir.path() / "doclaynet_title.md");
  EXPECT_EQ(md.rfind("## DocLayNet: A Large Human-Annotated Dataset for Document-Layout Analysis\n", 0), 0u)
      << md;
  EXPECT_NE(r.out.find("(success)"), std::string::npos);
}

TEST(Cli, ConvertToJsonRoundTrips) {
  TempDir dir;
  const auto r = run({"convert", (kFixtures / "two_column_table.dpages.json").string(), "--to", "json",
                      "--out", dir.path().string(), "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string json = slurp(dir.path() / "two_column_table.json");
  EXPECT_EQ(to_json(from_json(json)), json);
}

TEST(Cli, MissingInputExitsOne) {
  TempDir dir;
  const auto r = run({"convert", (dir.path() / "nope.dpages.json").string(), "--out", dir.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("nope.dpages.json"), std::string::npos);
}

TEST(Cli, BadInputInTheMiddle) {
  TempDir dir;
  const auto docs = corpus::synth_corpus({3, 1, 9});
  spit(dir.path() / "a.dpages.json", write_interchange(docs[0]));
  spit(dir.path() / "b.dpages.json", "{\"header\": 1");
  spit(dir.path() / "c.dpages.json", write_interchange(docs[2]));
  const fs::path out = dir.path() / "out";
  const auto r = run({"convert", (dir.path() / "a.dpages.json").string(), (dir.path() / "b.dpages.json").string(),
                      (dir.path() / "c.dpages.json").string(), "--to", "json", "--out", out.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(fs::exists(out / "a.json"));
  EXPECT_FALSE(fs::exists(out / "b.json"));
  EXPECT_TRUE(fs::exists(out / "c.json"));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"convert"}).code, 2);
  EXPECT_EQ(run({"convert", "x", "--to", "html"}).code, 2);
  EXPECT_EQ(run({"convert", "x", "--ocr", "--no-ocr"}).code, 2);
  EXPECT_EQ(run({"convert", "x", "--threads", "0"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("convert"), std::string::npos);
}

TEST(Cli, ConfigFile) {
  TempDir dir;
  spit(dir.path() / "cfg.json", R"({"pipeline": {"enable_table_structure": false}})");
  const auto r = run({"convert", (kFixtures / "two_column_table.dpages.json").string(), "--to", "json", "--out",
                      dir.path().string(), "--config", (dir.path() / "cfg.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Document d = from_json(slurp(dir.path() / "two_column_table.json"));
  for (const auto& item : d.items) EXPECT_NE(item.label, DocItemLabel::kTable);

  spit(dir.path() / "bad.json", R"({"pipeline": {"enable_tables": false}})");
  const auto bad = run({"convert", (kFixtures / "two_column_table.dpages.json").string(), "--config",
                        (dir.path() / "bad.json").string()});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("enable_tables"), std::string::npos);
}

TEST(Cli, Bench) {
  TempDir dir;
  corpus::write_corpus(dir.path() / "c", {2, 2, 3});
  const auto csv = dir.path() / "r.csv";
  const auto r = run({"bench", (dir.path() / "c").string(), "--threads", "1,2", "--out", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string body = slurp(csv);
  EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 3);
  EXPECT_NE(body.find(",interchange,1,4,"), std::string::npos);
  EXPECT_NE(body.find(",interchange,2,4,"), std::string::npos);
}

}  // namespace
}  // namespace docforge
