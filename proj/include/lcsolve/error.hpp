// Copyright 2026 The lcsolve Authors
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

#ifndef LCSOLVE_ERROR_HPP_
#define LCSOLVE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lcs {

enum class ErrorCode {
  kDuplicateEdge,
  kSelfLoop,
  kVertexOutOfRange,
  kInvalidInput,
  kInvalidColor,
  kUnknownProblem,
  kMissingParameter,
  kInvalidParameter,
  kEdgeNotInGraph,
  kIsolatedVertex,
  kNotComplete,
  kTooManyColors,
  kBudgetExceeded,
  kWitnessUnavailable,
  kTooManyConstraints,
  kSyntaxError,
  kSymmetryViolation,
  kCapTooSmall,
  kEmptySet,
  kParseError,
};

const char* ErrorCodeName(ErrorCode code);

class LcsError : public std::runtime_error {
 public:
  LcsError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parser diagnostics carry a 1-based source position.
class SyntaxError : public LcsError {
 public:
  SyntaxError(ErrorCode code, int line, int column, const std::string& msg)
      : LcsError(code, std::to_string(line) + ":" + std::to_string(column) +
                           ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace lcs

#endif  // LCSOLVE_ERROR_HPP_
