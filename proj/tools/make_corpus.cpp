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

// Writes the synthetic benchmark corpus, or the named test fixtures.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "docforge/corpus.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate synthetic .dpages.json documents"};
  std::string dir;
  docforge::corpus::CorpusSpec spec;
  bool fixtures = false;
  app.add_option("dir", dir, "Output directory")->required();
  app.add_option("--documents", spec.documents)->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--pages", spec.pages_per_document)->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", spec.seed)->capture_default_str();
  app.add_flag("--fixtures", fixtures, "Write the test fixtures instead");
  CLI11_PARSE(app, argc, argv);

  try {
    if (fixtures) {
      std::filesystem::create_directories(dir);
      for (const auto& doc : docforge::corpus::fixtures()) {
        const auto path = std::filesystem::path(dir) / (doc.name + ".dpages.json");
        std::ofstream(path, std::ios::binary) << docforge::write_interchange(doc);
      }
    } else {
      const auto files = docforge::corpus::write_corpus(dir, spec);
      std::cout << "wrote " << files.size() << " documents, "
                << files.size() * static_cast<std::size_t>(spec.pages_per_document)
                << " pages\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
