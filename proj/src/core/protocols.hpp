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

// Bell states, the compositionality lemma and teleportation.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"
#include "nogo.hpp"
#include "report.hpp"

namespace ccat {

struct BellBranch {
  std::size_t index = 0;
  Matrix branch;
  Matrix correction;
};

struct BranchVerdict {
  std::size_t index = 0;
  bool pass = false;
  /// correction . (coname(branch) (x) 1) . (1 (x) eta)
  Matrix composite;
  /// The same composite without the correction.
  Matrix residual;
  /// Set when the composite is s . 1 for a scalar s.
  std::optional<Scalar> global_factor;
};

struct ProtocolReport {
  std::string title;
  std::vector<BranchVerdict> branches;
  CheckReport checks;

  bool passed() const { return checks.passed(); }
};

/// (eta_A, eps_A).
std::pair<TypedTerm, TypedTerm> bell_pair_terms(const ObjectExpr& a);

/// Compares (coname(f) (x) 1_C) . (1_A (x) name(g)) with g . f.
ProtocolReport compositionality_lemma_check(const Model& m, const Matrix& f, const Matrix& g);

ProtocolReport teleport_verify(const Model& m, const std::string& base,
                               const std::vector<BellBranch>& branches);

/// The four qubit branches I, X, Z, XZ with their inverses as corrections.
std::vector<BellBranch> pauli_branches(const AlgebraPtr& alg);

/// Teleportation with a generic branch and its formal inverse, rewritten to
/// the identity diagram.
DerivationReport derive_teleport(const std::string& base);

}  // namespace ccat
