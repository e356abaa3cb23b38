// Copyright 2026 The ccat Authors
//
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
#include <vector>

namespace ccat {

enum class ErrorCode {
  UnknownName,
  CompositionMismatch,
  DaggerUnavailable,
  TraceShapeMismatch,
  NotAPermutation,
  TypeMismatch,
  NoSuchMatch,
  DimensionMismatch,
  NotASemilattice,
  UnboundGenerator,
  ConjUnavailable,
  KindMismatch,
  ShapeMismatch,
  PreconditionUnmet,
  NotInvertible,
  LexError,
  ParseError,
  ResolveError,
  ModelError,
  Usage,
};

const char* error_code_name(ErrorCode code);

/// Path of child indices from the root of a term to the offending subterm.
using TermPath = std::vector<int>;

/// 1-based source range; end is the position just past the last character.
struct SourceSpan {
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  bool valid() const { return line > 0; }
  std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
  bool operator==(const SourceSpan&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg, TermPath path = {})
      : std::runtime_error(msg), code_(code), path_(std::move(path)) {}
  Error(ErrorCode code, const std::string& msg, SourceSpan span,
        std::vector<std::string> expected = {})
      : std::runtime_error(span.str() + ": " + msg),
        code_(code),
        span_(span),
        expected_(std::move(expected)) {}

  ErrorCode code() const { return code_; }
  const TermPath& path() const { return path_; }
  const SourceSpan& span() const { return span_; }
  /// Token kinds that would have been accepted, for parse errors.
  const std::vector<std::string>& expected() const { return expected_; }

  /// Same error with `prefix` prepended to the message.
  Error prefixed(const std::string& prefix) const {
    Error e(code_, prefix + what(), path_);
    e.span_ = span_;
    e.expected_ = expected_;
    return e;
  }

 private:
  ErrorCode code_;
  TermPath path_;
  SourceSpan span_;
  std::vector<std::string> expected_;
};

}  // namespace ccat
