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

#include <compare>
#include <string>
#include <vector>

namespace ccat {

/// A polarized base object: `A` or `A*`.
struct Factor {
  std::string base;
  bool dual = false;

  Factor dualized() const { return {base, !dual}; }
  std::string str() const { return dual ? base + "*" : base; }

  auto operator<=>(const Factor&) const = default;
};

/// Strict tensor word of polarized base objects. The empty word is the unit I.
class ObjectExpr {
 public:
  ObjectExpr() = default;
  explicit ObjectExpr(std::vector<Factor> factors) : factors_(std::move(factors)) {}
  static ObjectExpr base(const std::string& name) { return ObjectExpr({{name, false}}); }
  static ObjectExpr unit() { return {}; }

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool is_unit() const { return factors_.empty(); }
  const Factor& operator[](std::size_t i) const { return factors_[i]; }

  ObjectExpr operator*(const ObjectExpr& rhs) const;
  ObjectExpr slice(std::size_t from, std::size_t count) const;
  bool ends_with(const ObjectExpr& suffix) const;

  /// Human-readable form: `I`, `A`, `A* * B`.
  std::string str() const;
  /// Source-language form: `I`, `A * dual(B)`.
  std::string source_str() const;

  auto operator<=>(const ObjectExpr&) const = default;

 private:
  std::vector<Factor> factors_;
};

/// Pointwise polarity flip with order preserved; an involution.
ObjectExpr dual_object(const ObjectExpr& a);

/// Parses `I`, `A * dual(B)` or the display form `A* * B`. Throws ParseError.
ObjectExpr parse_object(const std::string& text);

}  // namespace ccat
