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

#include "matrix.hpp"

#include <sstream>

#include "error.hpp"

namespace ccat {

Matrix::Matrix(AlgebraPtr alg, std::size_t rows, std::size_t cols)
    : alg_(std::move(alg)), rows_(rows), cols_(cols), entries_(rows * cols, alg_->zero()) {}

Matrix::Matrix(AlgebraPtr alg, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : alg_(std::move(alg)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix " + std::to_string(rows_) + "x" +
                                                  std::to_string(cols_) + " needs " +
                                                  std::to_string(rows_ * cols_) + " entries, got " +
                                                  std::to_string(entries_.size()));
}

Matrix Matrix::identity(AlgebraPtr alg, std::size_t n) {
  Matrix m(alg, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, alg->one());
  return m;
}

Matrix Matrix::scalar(AlgebraPtr alg, Scalar s) { return Matrix(std::move(alg), 1, 1, {std::move(s)}); }

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw Error(ErrorCode::ShapeMismatch, "cannot multiply " + std::to_string(rows_) + "x" +
                                              std::to_string(cols_) + " by " +
                                              std::to_string(rhs.rows_) + "x" +
                                              std::to_string(rhs.cols_));
  Matrix out(alg_, rows_, rhs.cols_);
  if (cols_ == 0) return out;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      Scalar acc = alg_->mul(at(i, 0), rhs.at(0, j));
      for (std::size_t k = 1; k < cols_; ++k) acc = alg_->add(acc, alg_->mul(at(i, k), rhs.at(k, j)));
      out.set(i, j, std::move(acc));
    }
  return out;
}

Matrix Matrix::kron(const Matrix& rhs) const {
  Matrix out(alg_, rows_ * rhs.rows_, cols_ * rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t k = 0; k < rhs.rows_; ++k)
        for (std::size_t l = 0; l < rhs.cols_; ++l)
          out.set(i * rhs.rows_ + k, j * rhs.cols_ + l, alg_->mul(at(i, j), rhs.at(k, l)));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(alg_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

Matrix Matrix::adjoint() const {
  if (!alg_->has_conj())
    throw Error(ErrorCode::ConjUnavailable, "scalar algebra '" + alg_->name() + "' has no involution");
  Matrix out(alg_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, alg_->conj(at(i, j)));
  return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix out = *this;
  for (auto& e : out.entries_) e = alg_->mul(s, e);
  return out;
}

Scalar Matrix::trace() const {
  if (rows_ != cols_) throw Error(ErrorCode::ShapeMismatch, "trace of a non-square matrix");
  if (rows_ == 0) return alg_->zero();
  Scalar acc = at(0, 0);
  for (std::size_t i = 1; i < rows_; ++i) acc = alg_->add(acc, at(i, i));
  return acc;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  Matrix a = *this;
  Matrix inv = identity(alg_, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && alg_->is_zero(a.at(pivot, c))) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a.entries_[c * n + k], a.entries_[pivot * n + k]);
        std::swap(inv.entries_[c * n + k], inv.entries_[pivot * n + k]);
      }
    const auto r = alg_->inverse(a.at(c, c));
    if (!r) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) {
      a.set(c, k, alg_->mul(*r, a.at(c, k)));
      inv.set(c, k, alg_->mul(*r, inv.at(c, k)));
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == c || alg_->is_zero(a.at(row, c))) continue;
      const Scalar f = alg_->negate(a.at(row, c));
      for (std::size_t k = 0; k < n; ++k) {
        a.set(row, k, alg_->add(a.at(row, k), alg_->mul(f, a.at(c, k))));
        inv.set(row, k, alg_->add(inv.at(row, k), alg_->mul(f, inv.at(c, k))));
      }
    }
  }
  return inv;
}

bool Matrix::operator==(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (!alg_->equal(entries_[i], rhs.entries_[i])) return false;
  return true;
}

std::string Matrix::str() const {
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (const auto& e : entries_) {
    cells.push_back(alg_->format(e));
    width = std::max(width, cells.back().size());
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& c = cells[i * cols_ + j];
      out << (j ? " " : "") << std::string(width - c.size(), ' ') << c;
    }
    out << "]\n";
  }
  return out.str();
}

Matrix factor_permutation(const AlgebraPtr& alg, const std::vector<std::size_t>& dims,
                          const std::vector<int>& target) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> out_dims(n);
  for (std::size_t i = 0; i < n; ++i) out_dims[target[i]] = dims[i];
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  Matrix m(alg, total, total);
  std::vector<std::size_t> digits(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      digits[i] = rest % dims[i];
      rest /= dims[i];
    }
    std::size_t out_idx = 0;
    std::vector<std::size_t> moved(n);
    for (std::size_t i = 0; i < n; ++i) moved[target[i]] = digits[i];
    for (std::size_t i = 0; i < n; ++i) out_idx = out_idx * out_dims[i] + moved[i];
    m.set(out_idx, idx, alg->one());
  }
  return m;
}

}  // namespace ccat
