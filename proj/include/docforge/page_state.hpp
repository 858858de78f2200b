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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docforge/backend.hpp"
#include "docforge/layout.hpp"
#include "docforge/model.hpp"
#include "docforge/tablestruct.hpp"

namespace docforge {

// Everything the stages add to a page. Stages only ever add fields.
struct PagePredictions {
  std::optional<std::vector<LayoutCluster>> layout;
  // Keyed by cluster_id of the Table cluster.
  std::optional<std::map<int, TableStructure>> tables;
  std::optional<std::vector<TextToken>> ocr_tokens;
  std::vector<std::string> warnings;

  friend bool operator==(const PagePredictions&, const PagePredictions&) =
      default;
};

// True when `after` keeps every prediction present in `before` unchanged.
bool extends(const PagePredictions& before, const PagePredictions& after);

struct PageState {
  std::shared_ptr<const ParsedPage> parsed;
  PagePredictions predictions;
  // Set when a stage failed on this page; predictions are then cleared.
  std::optional<std::string> failure;

  int page_no() const { return parsed->page_no; }
};

using PageStream = std::vector<PageState>;

// A named transform over a stream of pages. The output must hold the same
// pages (by page number) and may only extend their predictions.
struct StageContract {
  std::string name;
  std::function<PageStream(PageStream)> transform;
};

// Run one stage and enforce its contract. Throws StageContractError naming
// the stage when a page is dropped, duplicated, or its parsed data changes,
// or when predictions are removed.
PageStream run_stage(const StageContract& stage, PageStream pages);

// Chain stages into one; contracts are enforced between links.
StageContract compose(std::string name, std::vector<StageContract> stages);

}  // namespace docforge
