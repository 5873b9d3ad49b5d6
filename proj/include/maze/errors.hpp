// Copyright 2026 The Mazebench Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace maze {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A GameConfig violates one of its count or variant constraints.
struct InvalidConfigError : Error {
  using Error::Error;
};

struct OutOfRangeError : Error {
  using Error::Error;
};

// All p1 role weight mass sits on roles absent from the variant.
struct InfeasibleWeightsError : Error {
  using Error::Error;
};

struct ExhaustedAttemptsError : Error {
  explicit ExhaustedAttemptsError(int attempts)
      : Error("no solvable instance found within " +
              std::to_string(attempts) + " attempt(s)"),
        attempts(attempts) {}
  int attempts;
};

struct TooLargeError : Error {
  using Error::Error;
};

struct NotUniqueError : Error {
  using Error::Error;
};

struct UnknownPersonError : Error {
  using Error::Error;
};

struct TemplateMismatchError : Error {
  using Error::Error;
};

struct MalformedRecordError : Error {
  MalformedRecordError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

struct MixedTasksError : Error {
  using Error::Error;
};

// Endpoint or CLI configuration problem (missing credential, bad URL).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace maze
