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

// Small models used across tests.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "model.hpp"
#include "random_terms.hpp"

namespace ccat::testing {

inline Matrix rational_matrix(const std::vector<std::vector<long>>& rows) {
  std::vector<Scalar> e;
  for (const auto& r : rows)
    for (long v : r) e.emplace_back(mpq_class(v));
  return Matrix(rational_algebra(), rows.size(), rows.empty() ? 0 : rows[0].size(), std::move(e));
}

inline Matrix bool_matrix(const std::vector<std::vector<int>>& rows) {
  std::vector<Scalar> e;
  for (const auto& r : rows)
    for (int v : r) e.emplace_back(v != 0);
  return Matrix(boolean_algebra(), rows.size(), rows.empty() ? 0 : rows[0].size(), std::move(e));
}

inline Scalar random_scalar(std::mt19937_64& rng, const AlgebraPtr& alg) {
  const std::string n = alg->name();
  if (n == "bool") return pick(rng, 2) == 1;
  auto q = [&]() {
    return mpq_class(static_cast<long>(pick(rng, 7)) - 3, static_cast<long>(1 + pick(rng, 3)));
  };
  if (n == "rational") {
    mpq_class v = q();
    v.canonicalize();
    return v;
  }
  if (n == "complex-rational") {
    mpq_class a = q(), b = q();
    a.canonicalize();
    b.canonicalize();
    return ComplexRational{a, b};
  }
  if (n == "complex-float")
    return std::complex<double>(std::uniform_real_distribution<double>(-2, 2)(rng),
                                std::uniform_real_distribution<double>(-2, 2)(rng));
  const auto els = *alg->elements();
  return els[pick(rng, els.size())];
}

inline Matrix random_matrix(std::mt19937_64& rng, const AlgebraPtr& alg, std::size_t rows,
                            std::size_t cols) {
  std::vector<Scalar> e;
  for (std::size_t i = 0; i < rows * cols; ++i) e.push_back(random_scalar(rng, alg));
  return Matrix(alg, rows, cols, std::move(e));
}

/// Random function matrix: one 1 per column.
inline Matrix random_function(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Matrix m(boolean_algebra(), rows, cols);
  for (std::size_t c = 0; c < cols; ++c) m.set(pick(rng, rows), c, true);
  return m;
}

/// Binds every generator of `sig` to a random matrix of the right shape.
inline Model random_model(std::mt19937_64& rng, const Signature& sig, ModelKind kind,
                          AlgebraPtr alg, const std::vector<std::size_t>& dims) {
  ModelSpec spec;
  spec.kind = kind;
  spec.algebra = alg;
  for (std::size_t i = 0; i < sig.objects().size(); ++i)
    spec.objects.push_back({sig.objects()[i], dims[i]});
  auto dim = [&](const ObjectExpr& w) {
    std::size_t d = 1;
    for (const auto& f : w.factors())
      for (std::size_t i = 0; i < sig.objects().size(); ++i)
        if (sig.objects()[i] == f.base) d *= dims[i];
    return d;
  };
  for (const auto& g : sig.generators()) {
    const auto r = dim(g.cod), c = dim(g.dom);
    spec.generators.push_back(
        {g, kind == ModelKind::FinSet ? random_function(rng, r, c) : random_matrix(rng, alg, r, c)});
  }
  return build_model(std::move(spec));
}

/// Meet table of the chain 0 < 1 < ... < n-1.
inline std::vector<std::vector<int>> chain_meet(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = std::min(i, j);
  return t;
}

/// One model of each built-in kind over the exact algebras.
inline std::vector<Model> builtin_models(std::mt19937_64& rng, const Signature& sig) {
  const std::size_t n = sig.objects().size();
  std::vector<std::size_t> two(n, 2), mixed(n, 2);
  if (n > 1) mixed[1] = 3;
  std::vector<Model> out;
  out.push_back(random_model(rng, sig, ModelKind::Rel, boolean_algebra(), mixed));
  out.push_back(random_model(rng, sig, ModelKind::FdVec, rational_algebra(), two));
  out.push_back(random_model(rng, sig, ModelKind::FdVec, complex_rational_algebra(), two));
  out.push_back(random_model(rng, sig, ModelKind::FinSet, boolean_algebra(), mixed));
  out.push_back(random_model(rng, sig, ModelKind::Semilattice, semilattice_algebra(chain_meet(3)),
                             std::vector<std::size_t>(n, 1)));
  return out;
}

}  // namespace ccat::testing
