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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diagram.hpp"
#include "matrix.hpp"
#include "report.hpp"
#include "term.hpp"

namespace ccat {

enum class ModelKind { Rel, FdVec, FinSet, Semilattice };

const char* model_kind_name(ModelKind kind);
/// Accepts "rel", "fdvec", "finset" and "semilattice"; throws ModelError otherwise.
ModelKind parse_model_kind(const std::string& text);

/// Raw ingredients of a model, before validation.
struct ModelSpec {
  ModelKind kind = ModelKind::FdVec;
  AlgebraPtr algebra;
  std::vector<std::pair<std::string, std::size_t>> objects;
  std::vector<std::pair<Generator, Matrix>> generators;
  /// Optional factor multiplying the unit of a base object (default one).
  std::map<std::string, Scalar> unit_scale;
};

/// Dimensions for base objects and matrices for generators over one scalar
/// algebra. dim(A*) = dim(A).
class Model {
 public:
  ModelKind kind() const { return kind_; }
  const AlgebraPtr& algebra() const { return alg_; }
  /// Objects and generator types carried by the model.
  const Signature& signature() const { return sig_; }

  std::size_t dim(const std::string& base) const;
  std::size_t dim(const ObjectExpr& w) const;
  std::vector<std::size_t> dims(const ObjectExpr& w) const;
  bool has_generator(const std::string& name) const { return gens_.count(name) != 0; }
  /// Throws UnboundGenerator.
  const Matrix& generator(const std::string& name) const;
  Scalar unit_scale(const std::string& base) const;

 private:
  friend Model build_model(ModelSpec spec);
  ModelKind kind_ = ModelKind::FdVec;
  AlgebraPtr alg_;
  Signature sig_;
  std::map<std::string, std::size_t> dims_;
  std::map<std::string, Matrix> gens_;
  std::map<std::string, Scalar> unit_scale_;
};

/// Validates the spec against its kind. Throws DimensionMismatch for badly
/// shaped matrices and ModelError for kind violations.
Model build_model(ModelSpec spec);

// Denotations of the structural morphisms by dimension.
Matrix cup_matrix(const AlgebraPtr& alg, std::size_t d);
Matrix cap_matrix(const AlgebraPtr& alg, std::size_t d);
Matrix swap_matrix(const AlgebraPtr& alg, std::size_t da, std::size_t db);
/// Matrix of perm_term: factor i of the given dims moves to position p(i).
Matrix permutation_matrix(const AlgebraPtr& alg, const std::vector<std::size_t>& dims,
                          const Permutation& p);

// Denotations of the structural morphisms under a model.
Matrix identity_matrix(const Model& m, const ObjectExpr& w);
Matrix unit_matrix(const Model& m, const ObjectExpr& w);
Matrix counit_matrix(const Model& m, const ObjectExpr& w);
Matrix symmetry_matrix(const Model& m, const ObjectExpr& a, const ObjectExpr& b);

/// Functorial evaluation. Throws UnboundGenerator, ConjUnavailable.
Matrix eval(const Term& t, const Model& m);
Matrix eval(const TypedTerm& t, const Model& m);

struct LoopContribution {
  LoopLabel label;
  Scalar value;
};

struct EvalReport {
  Matrix result;
  /// Scalar value of each closed loop of the term's diagram.
  std::vector<LoopContribution> ledger;
};

EvalReport eval_report(const TypedTerm& t, const Model& m, const Signature& sig);

/// Value of a closed loop under the model.
Scalar loop_value(const LoopLabel& loop, const Model& m, const Signature& sig);

/// s . f for a 1x1 matrix s. Throws ShapeMismatch otherwise.
Matrix scalar_action(const Matrix& s, const Matrix& f);
Scalar model_trace(const Matrix& f);

/// Checks eps_A = eta_A^dagger . sigma_{A,A*} for every base object, unitarity
/// of the symmetries and involutivity of the dagger on generators.
CheckReport dagger_compact_check(const Model& m);

}  // namespace ccat
