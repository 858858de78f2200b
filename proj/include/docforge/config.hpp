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

#include <filesystem>
#include <string_view>

#include "docforge/pipeline.hpp"

namespace docforge {

// Overlay a JSON configuration onto `base`. Recognised top-level objects are
// "pipeline", "layout" and "table"; their keys mirror the config struct
// fields. Unknown keys and wrongly typed values throw ConfigError.
PipelineConfig parse_pipeline_config(std::string_view json_text,
                                     PipelineConfig base = {});
PipelineConfig load_pipeline_config(const std::filesystem::path& path,
                                    PipelineConfig base = {});

}  // namespace docforge
