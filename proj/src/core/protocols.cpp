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

#include "protocols.hpp"

#include "diagram.hpp"

namespace ccat {

std::pair<TypedTerm, TypedTerm> bell_pair_terms(const ObjectExpr& a) {
  return {unit_term(a), counit_term(a)};
}

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// s when m = s . 1, for square m.
std::optional<Scalar> scalar_multiple(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return std::nullopt;
  const Scalar s = m.at(0, 0);
  if (m == Matrix::identity(m.algebra(), m.rows()).scaled(s)) return s;
  return std::nullopt;
}

}  // namespace

ProtocolReport compositionality_lemma_check(const Model& m, const Matrix& f, const Matrix& g) {
  if (f.rows() != g.cols())
    throw Error(ErrorCode::ShapeMismatch,
                "f is " + shape(f) + " and g is " + shape(g) + "; they do not compose");
  const auto& alg = m.algebra();
  const std::size_t da = f.cols(), db = f.rows(), dc = g.rows();
  const Matrix coname_f = cap_matrix(alg, db) * f.kron(Matrix::identity(alg, db));
  const Matrix name_g = Matrix::identity(alg, db).kron(g) * cup_matrix(alg, db);
  const Matrix composite = coname_f.kron(Matrix::identity(alg, dc)) *
                           Matrix::identity(alg, da).kron(name_g);
  ProtocolReport r;
  r.title = "compositionality lemma";
  r.checks.title = r.title;
  r.checks.expect_equal("lemma", composite, g * f,
                        "(coname(f) (x) 1) . (1 (x) name(g)) vs g . f", {}, {}, f);
  return r;
}

ProtocolReport teleport_verify(const Model& m, const std::string& base,
                               const std::vector<BellBranch>& branches) {
  const auto& alg = m.algebra();
  const ObjectExpr a = ObjectExpr::base(base);
  const std::size_t d = m.dim(a);
  // Input tensored with the shared pair, then the measurement costate.
  const Matrix channel = Matrix::identity(alg, d).kron(unit_matrix(m, a));
  const Matrix id = Matrix::identity(alg, d);
  ProtocolReport r;
  r.title = "teleportation on " + base;
  r.checks.title = r.title;
  for (const auto& b : branches) {
    const std::string tag = "branch/" + std::to_string(b.index);
    for (const Matrix* mat : {&b.branch, &b.correction})
      if (mat->rows() != d || mat->cols() != d)
        throw Error(ErrorCode::ShapeMismatch, tag + ": expected " + std::to_string(d) + "x" +
                                                  std::to_string(d) + ", got " + shape(*mat));
    if (!b.branch.inverse())
      throw Error(ErrorCode::NotInvertible, tag + ": branch matrix is not invertible");
    const Matrix measure = counit_matrix(m, a) * b.branch.kron(id);
    BranchVerdict v;
    v.index = b.index;
    v.residual = measure.kron(id) * channel;
    v.composite = b.correction * v.residual;
    v.global_factor = scalar_multiple(v.composite);
    v.pass = v.composite == id;
    if (v.pass) {
      r.checks.pass(tag, "composite = 1");
    } else {
      std::string detail = "composite != 1";
      if (v.global_factor) detail += "; equals " + alg->format(*v.global_factor) + " . 1";
      r.checks.fail(tag, detail,
                    Witness{"uncorrected composite of branch " + std::to_string(b.index), a, a,
                            v.residual, v.composite, id});
    }
    r.branches.push_back(std::move(v));
  }
  return r;
}

std::vector<BellBranch> pauli_branches(const AlgebraPtr& alg) {
  auto mat = [&](std::vector<long> v) {
    std::vector<Scalar> e;
    for (long x : v) e.push_back(alg->from_int(x));
    return Matrix(alg, 2, 2, std::move(e));
  };
  const Matrix i = mat({1, 0, 0, 1}), x = mat({0, 1, 1, 0}), z = mat({1, 0, 0, -1});
  std::vector<BellBranch> out;
  std::size_t k = 0;
  for (const Matrix& beta : {i, x, z, x * z}) {
    auto inv = beta.inverse();
    if (!inv) throw Error(ErrorCode::NotInvertible, "Pauli branch is not invertible");
    out.push_back({k++, beta, *inv});
  }
  return out;
}

DerivationReport derive_teleport(const std::string& base) {
  DerivationReport r;
  r.title = "teleportation on " + base;
  Signature& sig = r.signature;
  sig.add_object(base);
  const ObjectExpr a = ObjectExpr::base(base);
  sig.add_generator({"beta", a, a});
  sig.add_generator({"beta_inv", a, a});
  const TypedTerm beta = generator_term(*sig.find_generator("beta"));
  const TypedTerm inv = generator_term(*sig.find_generator("beta_inv"));
  const Equation left = make_equation("inverse-left", then(beta, inv), identity(a));
  const Equation right = make_equation("inverse-right", then(inv, beta), identity(a));
  r.derived = {left, right};

  const TypedTerm protocol =
      then(then(tensor(identity(a), unit_term(a)), tensor(coname_of(beta), identity(a))), inv);
  auto key = [&](const TypedTerm& t) { return canonical_key(to_diagram(t, sig)); };
  auto& c = r.conclusions;
  c.title = r.title;
  const Diagram start = to_diagram(protocol, sig);
  if (canonical_key(start) == key(then(beta, inv)))
    c.pass("canonical form", "the channel straightens to beta ; beta_inv");
  else c.fail("canonical form", "the channel does not straighten");

  Diagram cur = start;
  const auto target = key(identity(a));
  for (int guard = 0; guard < 3 && canonical_key(cur) != target; ++guard) {
    auto sites = enumerate_matches(cur, to_diagram(left.lhs, sig));
    if (sites.empty()) break;
    Diagram next = apply_equation(cur, left, sig, sites.front());
    r.steps.push_back({"cancel the correction", 0, cur, left, sites.front(), next,
                       canonical_key(cur), canonical_key(next)});
    cur = std::move(next);
  }
  if (canonical_key(cur) == target && r.steps.size() <= 3)
    c.pass("identity", std::to_string(r.steps.size()) + " rewrite step(s)");
  else c.fail("identity", "did not reach the identity within 3 steps");
  return r;
}

}  // namespace ccat
