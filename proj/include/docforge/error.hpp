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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace docforge {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unresolvable source, malformed interchange payload, unsupported version.
class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what,
                        std::optional<std::size_t> byte_offset = std::nullopt)
      : Error(what), byte_offset_(byte_offset) {}

  std::optional<std::size_t> byte_offset() const { return byte_offset_; }

 private:
  std::optional<std::size_t> byte_offset_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A stage broke the page-stream contract (dropped a page, touched parsed data).
class StageContractError : public Error {
 public:
  StageContractError(std::string stage, const std::string& what)
      : Error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class TableStructureError : public Error {
 public:
  using Error::Error;
};

// Internal invariant violated while assembling; signals a bug, not bad input.
class AssemblyError : public Error {
 public:
  using Error::Error;
};

// JSON document parse or schema failure. `location` is a byte offset for
// syntax errors and a JSON pointer for schema errors.
class SerializeError : public Error {
 public:
  SerializeError(const std::string& what, std::string location)
      : Error(what + " at " + location), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

}  // namespace docforge
