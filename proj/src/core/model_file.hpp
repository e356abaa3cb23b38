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

// Model files: JSON with a model, optional natural families and teleport branches.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "model.hpp"
#include "nogo.hpp"
#include "protocols.hpp"

namespace ccat {

struct ModelFile {
  Model model;
  std::vector<NaturalFamily> families;
  std::vector<BellBranch> teleport;
  /// Base object the teleport branches act on.
  std::string teleport_object;
  double tolerance = 1e-9;

  const NaturalFamily* family(const std::string& name) const;
  /// First family of the given kind, in file order.
  const NaturalFamily* family_of_kind(FamilyKind kind) const;
};

/// Parses a model file. Generators given as a bare entry array take their
/// type from `sig`; typed generators must agree with `sig` when both exist.
ModelFile parse_model_file(const std::string& text, const Signature* sig = nullptr);
ModelFile load_model_file(const std::string& path, const Signature* sig = nullptr);

Scalar parse_scalar_json(const nlohmann::ordered_json& j, const ScalarAlgebra& alg);
/// Accepts a flat row-major array or an array of rows.
Matrix parse_matrix_json(const nlohmann::ordered_json& j, const AlgebraPtr& alg, std::size_t rows,
                         std::size_t cols, const std::string& what);

/// Serializes a model in the same format the loader reads.
nlohmann::ordered_json model_file_json(const ModelFile& f);

}  // namespace ccat
