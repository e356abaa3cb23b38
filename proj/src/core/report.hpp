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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>
#include "matrix.hpp"
#include "object.hpp"

namespace ccat {

/// Concrete evidence for a failed condition: the morphism that was tried and
/// the two sides that differ.
struct Witness {
  std::string description;
  ObjectExpr dom;
  ObjectExpr cod;
  std::optional<Matrix> morphism;
  Matrix lhs;
  Matrix rhs;
};

struct CheckEntry {
  std::string name;
  bool pass = true;
  std::string detail;
  std::optional<Witness> witness;
};

struct CheckReport {
  std::string title;
  std::vector<CheckEntry> entries;
  std::vector<std::string> notes;

  bool passed() const;
  const CheckEntry* find(const std::string& name) const;
  /// First failing entry, if any.
  const CheckEntry* first_failure() const;

  void pass(std::string name, std::string detail = {});
  void fail(std::string name, std::string detail, std::optional<Witness> w = std::nullopt);
  /// Records pass when lhs == rhs, otherwise fail with the two sides as witness.
  bool expect_equal(const std::string& name, const Matrix& lhs, const Matrix& rhs,
                    std::string description = {}, ObjectExpr dom = {}, ObjectExpr cod = {},
                    std::optional<Matrix> morphism = std::nullopt);
  void merge(const CheckReport& other, const std::string& prefix);
};

nlohmann::ordered_json to_json(const Matrix& m);
nlohmann::ordered_json to_json(const CheckReport& r);
std::string to_text(const CheckReport& r);

}  // namespace ccat
