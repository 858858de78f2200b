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

#include "docforge/page_state.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "docforge/error.hpp"

namespace docforge {

bool extends(const PagePredictions& before, const PagePredictions& after) {
  if (before.layout && after.layout != before.layout) return false;
  if (before.ocr_tokens && after.ocr_tokens != before.ocr_tokens) return false;
  if (before.tables) {
    if (!after.tables) return false;
    for (const auto& [id, table] : *before.tables) {
      auto it = after.tables->find(id);
      if (it == after.tables->end() || !(it->second == table)) return false;
    }
  }
  if (after.warnings.size() < before.warnings.size() ||
      !std::equal(before.warnings.begin(), before.warnings.end(),
                  after.warnings.begin())) {
    return false;
  }
  return true;
}

PageStream run_stage(const StageContract& stage, PageStream pages) {
  struct Snapshot {
    std::shared_ptr<const ParsedPage> parsed;
    PagePredictions predictions;
    bool seen = false;
  };
  std::unordered_map<int, Snapshot> before;
  for (const auto& p : pages) {
    if (!before.emplace(p.page_no(), Snapshot{p.parsed, p.predictions}).second) {
      throw StageContractError(stage.name, fmt::format("input holds page {} twice",
                                                       p.page_no()));
    }
  }

  PageStream out = stage.transform(std::move(pages));

  for (const auto& p : out) {
    if (!p.parsed) throw StageContractError(stage.name, "emitted a page without data");
    auto it = before.find(p.page_no());
    if (it == before.end()) {
      throw StageContractError(
          stage.name, fmt::format("emitted unknown page {}", p.page_no()));
    }
    Snapshot& snap = it->second;
    if (snap.seen) {
      throw StageContractError(
          stage.name, fmt::format("emitted page {} twice", p.page_no()));
    }
    snap.seen = true;
    if (p.parsed != snap.parsed && !(*p.parsed == *snap.parsed)) {
      throw StageContractError(
          stage.name, fmt::format("modified parsed data of page {}", p.page_no()));
    }
    if (!extends(snap.predictions, p.predictions)) {
      throw StageContractError(
          stage.name,
          fmt::format("removed or changed predictions of page {}", p.page_no()));
    }
  }
  for (const auto& [page_no, snap] : before) {
    if (!snap.seen) {
      throw StageContractError(stage.name,
                               fmt::format("dropped page {}", page_no));
    }
  }
  return out;
}

StageContract compose(std::string name, std::vector<StageContract> stages) {
  return {std::move(name), [stages = std::move(stages)](PageStream pages) {
            for (const auto& s : stages) pages = run_stage(s, std::move(pages));
            return pages;
          }};
}

}  // namespace docforge
