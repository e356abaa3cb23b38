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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace ccat {

/// Dense row-major matrix over a scalar algebra. A morphism A -> B is a
/// dim(B) x dim(A) matrix; states are columns, effects are rows.
class Matrix {
 public:
  Matrix() = default;
  Matrix(AlgebraPtr alg, std::size_t rows, std::size_t cols);
  Matrix(AlgebraPtr alg, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(AlgebraPtr alg, std::size_t n);
  static Matrix scalar(AlgebraPtr alg, Scalar s);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Scalar>& entries() const { return entries_; }
  const Scalar& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Scalar v) { entries_[r * cols_ + c] = std::move(v); }

  /// Matrix product: (*this) after rhs.
  Matrix operator*(const Matrix& rhs) const;
  /// Kronecker product with index (i, j) -> i * rhs_dim + j.
  Matrix kron(const Matrix& rhs) const;
  Matrix transpose() const;
  /// Conjugate transpose; throws ConjUnavailable without an involution.
  Matrix adjoint() const;
  Matrix scaled(const Scalar& s) const;
  Scalar trace() const;
  /// Gauss-Jordan inverse over a field; nullopt when singular or the algebra
  /// has no division.
  std::optional<Matrix> inverse() const;

  bool operator==(const Matrix& rhs) const;
  std::string str() const;

 private:
  AlgebraPtr alg_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

/// Permutation matrix moving tensor factor i (of the given dims) to position
/// target[i] (0-based).
Matrix factor_permutation(const AlgebraPtr& alg, const std::vector<std::size_t>& dims,
                          const std::vector<int>& target);

}  // namespace ccat
