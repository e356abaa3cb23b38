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

#include "model.hpp"

#include <algorithm>

namespace ccat {

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Rel: return "rel";
    case ModelKind::FdVec: return "fdvec";
    case ModelKind::FinSet: return "finset";
    case ModelKind::Semilattice: return "semilattice";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& text) {
  if (text == "rel") return ModelKind::Rel;
  if (text == "fdvec") return ModelKind::FdVec;
  if (text == "finset") return ModelKind::FinSet;
  if (text == "semilattice") return ModelKind::Semilattice;
  throw Error(ErrorCode::ModelError, "unknown model kind '" + text + "'");
}

std::size_t Model::dim(const std::string& base) const {
  auto it = dims_.find(base);
  if (it == dims_.end()) throw Error(ErrorCode::UnknownName, "model has no object '" + base + "'");
  return it->second;
}

std::size_t Model::dim(const ObjectExpr& w) const {
  std::size_t d = 1;
  for (const auto& f : w.factors()) d *= dim(f.base);
  return d;
}

std::vector<std::size_t> Model::dims(const ObjectExpr& w) const {
  std::vector<std::size_t> out;
  for (const auto& f : w.factors()) out.push_back(dim(f.base));
  return out;
}

const Matrix& Model::generator(const std::string& name) const {
  auto it = gens_.find(name);
  if (it == gens_.end())
    throw Error(ErrorCode::UnboundGenerator, "generator '" + name + "' has no matrix in the model");
  return it->second;
}

Scalar Model::unit_scale(const std::string& base) const {
  auto it = unit_scale_.find(base);
  return it == unit_scale_.end() ? alg_->one() : it->second;
}

Model build_model(ModelSpec spec) {
  if (!spec.algebra) throw Error(ErrorCode::ModelError, "model has no scalar algebra");
  const std::string alg = spec.algebra->name();
  switch (spec.kind) {
    case ModelKind::Rel:
    case ModelKind::FinSet:
      if (alg != "bool")
        throw Error(ErrorCode::ModelError,
                    std::string(model_kind_name(spec.kind)) + " models need bool scalars");
      break;
    case ModelKind::FdVec:
      if (alg != "rational" && alg != "complex-rational" && alg != "complex-float")
        throw Error(ErrorCode::ModelError, "fdvec models need field scalars, not " + alg);
      break;
    case ModelKind::Semilattice:
      if (alg != "semilattice")
        throw Error(ErrorCode::ModelError, "semilattice models need semilattice scalars");
      break;
  }
  Model m;
  m.kind_ = spec.kind;
  m.alg_ = spec.algebra;
  m.sig_.set_dagger_closed(spec.algebra->has_conj());
  for (const auto& [name, d] : spec.objects) {
    if (d == 0) throw Error(ErrorCode::DimensionMismatch, "object '" + name + "' has dimension 0");
    if (spec.kind == ModelKind::Semilattice && d != 1)
      throw Error(ErrorCode::DimensionMismatch,
                  "semilattice model object '" + name + "' must have dimension 1");
    m.sig_.add_object(name);
    m.dims_[name] = d;
  }
  for (auto& [g, mat] : spec.generators) {
    m.sig_.add_generator(g);
    const std::size_t rows = m.dim(g.cod), cols = m.dim(g.dom);
    if (mat.rows() != rows || mat.cols() != cols)
      throw Error(ErrorCode::DimensionMismatch,
                  "generator '" + g.name + "' needs a " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " matrix, got " + std::to_string(mat.rows()) + "x" +
                      std::to_string(mat.cols()));
    if (mat.algebra()->name() != alg)
      throw Error(ErrorCode::ModelError, "generator '" + g.name + "' uses the wrong scalars");
    if (spec.kind == ModelKind::FinSet) {
      for (std::size_t c = 0; c < cols; ++c) {
        int ones = 0;
        for (std::size_t r = 0; r < rows; ++r)
          if (!spec.algebra->is_zero(mat.at(r, c))) ++ones;
        if (ones != 1)
          throw Error(ErrorCode::ModelError,
                      "finset generator '" + g.name + "' column " + std::to_string(c) +
                          " must contain exactly one 1");
      }
    }
    m.gens_.emplace(g.name, std::move(mat));
  }
  for (const auto& [base, s] : spec.unit_scale) {
    if (!m.dims_.count(base))
      throw Error(ErrorCode::UnknownName, "unit scale for unknown object '" + base + "'");
    m.unit_scale_[base] = s;
  }
  return m;
}

Matrix identity_matrix(const Model& m, const ObjectExpr& w) {
  return Matrix::identity(m.algebra(), m.dim(w));
}

namespace {

Scalar word_unit_scale(const Model& m, const ObjectExpr& w) {
  Scalar s = m.algebra()->one();
  for (const auto& f : w.factors()) s = m.algebra()->mul(s, m.unit_scale(f.base));
  return s;
}

}  // namespace

Matrix cup_matrix(const AlgebraPtr& alg, std::size_t d) {
  Matrix out(alg, d * d, 1);
  for (std::size_t k = 0; k < d; ++k) out.set(k * d + k, 0, alg->one());
  return out;
}

Matrix cap_matrix(const AlgebraPtr& alg, std::size_t d) { return cup_matrix(alg, d).transpose(); }

Matrix swap_matrix(const AlgebraPtr& alg, std::size_t da, std::size_t db) {
  return factor_permutation(alg, {da, db}, {1, 0});
}

Matrix permutation_matrix(const AlgebraPtr& alg, const std::vector<std::size_t>& dims,
                          const Permutation& p) {
  if (p.size() != dims.size())
    throw Error(ErrorCode::NotAPermutation,
                "permutation " + p.str() + " does not act on " + std::to_string(dims.size()) +
                    " factors");
  std::vector<int> target;
  for (std::size_t i = 0; i < dims.size(); ++i) target.push_back(p(static_cast<int>(i) + 1) - 1);
  return factor_permutation(alg, dims, target);
}

Matrix unit_matrix(const Model& m, const ObjectExpr& w) {
  return cup_matrix(m.algebra(), m.dim(w)).scaled(word_unit_scale(m, w));
}

Matrix counit_matrix(const Model& m, const ObjectExpr& w) {
  return cap_matrix(m.algebra(), m.dim(w));
}

Matrix symmetry_matrix(const Model& m, const ObjectExpr& a, const ObjectExpr& b) {
  return swap_matrix(m.algebra(), m.dim(a), m.dim(b));
}

Matrix eval(const Term& t, const Model& m) {
  switch (t.kind()) {
    case TermKind::Gen:
      return m.generator(t.name());
    case TermKind::Id:
      return identity_matrix(m, t.object());
    case TermKind::Compose:
      return eval(t.child(0), m) * eval(t.child(1), m);
    case TermKind::Tensor:
      return eval(t.child(0), m).kron(eval(t.child(1), m));
    case TermKind::Sym:
      return symmetry_matrix(m, t.object(), t.object2());
    case TermKind::Unit:
      return unit_matrix(m, t.object());
    case TermKind::Counit:
      return counit_matrix(m, t.object());
    case TermKind::Dagger:
      return eval(t.child(0), m).adjoint();
  }
  throw std::logic_error("unreachable");
}

Matrix eval(const TypedTerm& t, const Model& m) {
  Matrix out = eval(t.term, m);
  if (out.rows() != m.dim(t.cod) || out.cols() != m.dim(t.dom))
    throw Error(ErrorCode::DimensionMismatch,
                "evaluation of " + t.term.str() + " has shape " + std::to_string(out.rows()) + "x" +
                    std::to_string(out.cols()) + " but its type needs " +
                    std::to_string(m.dim(t.cod)) + "x" + std::to_string(m.dim(t.dom)));
  return out;
}

Scalar loop_value(const LoopLabel& loop, const Model& m, const Signature& sig) {
  const auto& alg = m.algebra();
  if (loop.word.empty()) return alg->from_int(static_cast<long>(m.dim(loop.base)));
  Matrix acc;
  bool first = true;
  for (const auto& letter : loop.word) {
    const Generator* g = sig.find_generator(letter.gen);
    if (!g) throw Error(ErrorCode::UnknownName, "unknown generator '" + letter.gen + "'");
    Matrix node = m.generator(letter.gen);
    ObjectExpr dom = g->dom, cod = g->cod;
    if (letter.dagger) {
      node = node.adjoint();
      std::swap(dom, cod);
    }
    // Two-index tensor t[a][b] over the node's ports 0 and 1.
    const auto ports = dom * cod;
    const std::size_t d0 = m.dim(ports.factors()[0].base), d1 = m.dim(ports.factors()[1].base);
    Matrix tensor(alg, d0, d1);
    for (std::size_t a = 0; a < d0; ++a)
      for (std::size_t b = 0; b < d1; ++b) {
        if (dom.size() == 1) tensor.set(a, b, node.at(b, a));
        else if (dom.size() == 0) tensor.set(a, b, node.at(a * d1 + b, 0));
        else tensor.set(a, b, node.at(0, a * d1 + b));
      }
    const Matrix step = letter.enter == 0 ? tensor.transpose() : tensor;
    acc = first ? step : step * acc;
    first = false;
  }
  return acc.trace();
}

EvalReport eval_report(const TypedTerm& t, const Model& m, const Signature& sig) {
  EvalReport r;
  r.result = eval(t, m);
  const Diagram d = to_diagram(t, sig);
  for (const auto& l : d.loops()) {
    LoopContribution c;
    c.label = l;
    c.value = loop_value(l, m, sig);
    r.ledger.push_back(std::move(c));
  }
  return r;
}

Matrix scalar_action(const Matrix& s, const Matrix& f) {
  if (s.rows() != 1 || s.cols() != 1)
    throw Error(ErrorCode::ShapeMismatch, "scalar action needs a 1x1 scalar, got " +
                                              std::to_string(s.rows()) + "x" +
                                              std::to_string(s.cols()));
  return f.scaled(s.at(0, 0));
}

Scalar model_trace(const Matrix& f) { return f.trace(); }

CheckReport dagger_compact_check(const Model& m) {
  if (!m.algebra()->has_conj())
    throw Error(ErrorCode::ConjUnavailable,
                "scalars '" + m.algebra()->name() + "' have no involution");
  CheckReport r;
  r.title = "dagger compact structure";
  const auto& objs = m.signature().objects();
  for (const auto& name : objs) {
    const ObjectExpr a = ObjectExpr::base(name);
    const ObjectExpr ad = dual_object(a);
    r.expect_equal("counit/" + name, counit_matrix(m, a),
                   unit_matrix(m, a).adjoint() * symmetry_matrix(m, a, ad),
                   "eps = eta^dagger . sigma at " + name, a * ad, ObjectExpr{});
  }
  for (const auto& x : objs)
    for (const auto& y : objs) {
      const ObjectExpr a = ObjectExpr::base(x), b = ObjectExpr::base(y);
      const Matrix s = symmetry_matrix(m, a, b);
      r.expect_equal("symmetry/" + x + "," + y, s.adjoint() * s, identity_matrix(m, a * b),
                     "sigma^dagger . sigma = 1", a * b, a * b);
    }
  for (const auto& g : m.signature().generators()) {
    const Matrix& f = m.generator(g.name);
    r.expect_equal("involution/" + g.name, f.adjoint().adjoint(), f, "dagger twice", g.dom, g.cod);
  }
  return r;
}

}  // namespace ccat
