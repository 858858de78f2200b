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

#include <ostream>
#include <span>
#include <string>

namespace docforge {

// Entry point of the docforge command line. `args` excludes the program name.
// Returns 0 when every source converted, 1 when any failed, 2 on a usage or
// configuration error.
int cli_main(std::span<const std::string> args, std::ostream& out,
             std::ostream& err);

}  // namespace docforge
