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

#include <doctest.h>

#include <random>

#include "diagram.hpp"
#include "model.hpp"
#include "../support/models.hpp"
#include "../support/random_terms.hpp"

using namespace ccat;
using namespace ccat::testing;

namespace {

const ObjectExpr A = ObjectExpr::base("A");
const ObjectExpr B = ObjectExpr::base("B");

Signature ab_signature() {
  Signature sig;
  sig.add_object("A");
  sig.add_object("B");
  sig.add_generator({"f", A, B});
  sig.add_generator({"g", A, B});
  sig.add_generator({"h", B, A});
  return sig;
}

Model fdvec(const Signature& sig, std::size_t da, std::size_t db, std::vector<Matrix> gens) {
  ModelSpec spec;
  spec.kind = ModelKind::FdVec;
  spec.algebra = rational_algebra();
  spec.objects = {{"A", da}, {"B", db}};
  for (std::size_t i = 0; i < gens.size(); ++i) spec.generators.push_back({sig.generators()[i], gens[i]});
  return build_model(spec);
}

Model rel(const Signature& sig, std::size_t da, std::size_t db, std::vector<Matrix> gens) {
  ModelSpec spec;
  spec.kind = ModelKind::Rel;
  spec.algebra = boolean_algebra();
  spec.objects = {{"A", da}, {"B", db}};
  for (std::size_t i = 0; i < gens.size(); ++i) spec.generators.push_back({sig.generators()[i], gens[i]});
  return build_model(spec);
}

}  // namespace

TEST_CASE("typecheck computes domains and codomains") {
  const Signature sig = ab_signature();
  const Term yank = Term::compose(Term::tensor(Term::counit(A), Term::id(A)),
                                  Term::tensor(Term::id(A), Term::unit(A)));
  const TypedTerm t = typecheck(yank, sig);
  CHECK(t.dom == A);
  CHECK(t.cod == A);

  const Term unit_ab = Term::unit(A * B);
  const TypedTerm u = typecheck(unit_ab, sig);
  CHECK(u.dom == ObjectExpr{});
  CHECK(u.cod.str() == "A* * B* * A * B");

  SUBCASE("composite units still satisfy the triangle identity") {
    const ObjectExpr w = A * B;
    const TypedTerm yank_w =
        then(tensor(identity(w), unit_term(w)), tensor(counit_term(w), identity(w)));
    CHECK(yank_w.dom == w);
    std::mt19937_64 rng(7);
    const Model m = fdvec(sig, 2, 3,
                          {random_matrix(rng, rational_algebra(), 3, 2),
                           random_matrix(rng, rational_algebra(), 3, 2),
                           random_matrix(rng, rational_algebra(), 2, 3)});
    CHECK(eval(yank_w, m) == Matrix::identity(rational_algebra(), 6));
    CHECK(equal_diagrams(yank_w, identity(w), sig));
  }
}

TEST_CASE("composition mismatch reports both words and the subterm path") {
  const Signature sig = ab_signature();
  const Term bad = Term::tensor(Term::id(A), Term::compose(Term::gen("f"), Term::gen("f")));
  try {
    typecheck(bad, sig);
    FAIL("expected a type error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CompositionMismatch);
    CHECK(e.path() == TermPath{1});
    const std::string msg = e.what();
    CHECK(msg.find("B") != std::string::npos);
    CHECK(msg.find("A") != std::string::npos);
  }
}

TEST_CASE("typecheck errors") {
  Signature sig = ab_signature();
  CHECK_THROWS_AS(typecheck(Term::gen("nope"), sig), Error);
  try {
    typecheck(Term::id(ObjectExpr::base("Z")), sig);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownName);
  }
  try {
    typecheck(Term::dagger(Term::gen("f")), sig);
    FAIL("dagger should be unavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DaggerUnavailable);
  }
  sig.set_dagger_closed(true);
  const TypedTerm d = typecheck(Term::dagger(Term::gen("f")), sig);
  CHECK(d.dom == B);
  CHECK(d.cod == A);
}

TEST_CASE("typecheck is deterministic and re-checking reproduces the type") {
  std::mt19937_64 rng(11);
  const Signature sig = fuzz_signature();
  TermGen gen(rng, sig, true);
  for (int i = 0; i < 200; ++i) {
    const TypedTerm t = gen.any(3);
    const TypedTerm again = typecheck(t.term, sig);
    CHECK(again.dom == t.dom);
    CHECK(again.cod == t.cod);
  }
}

TEST_CASE("dual_object flips polarity and is an involution") {
  CHECK(dual_object(ObjectExpr{}) == ObjectExpr{});
  CHECK(dual_object(A * dual_object(B)) == dual_object(A) * B);
  std::mt19937_64 rng(3);
  const Signature sig = fuzz_signature();
  TermGen gen(rng, sig);
  for (int i = 0; i < 100; ++i) {
    const ObjectExpr w = gen.random_word(pick(rng, 7));
    CHECK(dual_object(dual_object(w)) == w);
    CHECK(dual_object(w).size() == w.size());
  }
}

TEST_CASE("name_of") {
  const Signature sig = ab_signature();
  CHECK(equal_diagrams(name_of(identity(A)), unit_term(A), sig));

  SUBCASE("fdvec name is the column-major vectorization") {
    std::mt19937_64 rng(5);
    const Matrix f = random_matrix(rng, rational_algebra(), 3, 2);
    const Model m = fdvec(sig, 2, 3, {f, f, f.transpose()});
    const Matrix v = eval(name_of(generator_term(sig.generators()[0])), m);
    REQUIRE(v.rows() == 6);
    REQUIRE(v.cols() == 1);
    std::size_t k = 0;
    for (std::size_t col = 0; col < f.cols(); ++col)
      for (std::size_t row = 0; row < f.rows(); ++row) CHECK(v.at(k++, 0) == f.at(row, col));
  }

  SUBCASE("rel name is the set of related pairs") {
    const Matrix r = bool_matrix({{1, 0}, {1, 1}, {0, 0}});  // 0R0, 0R1, 1R1 (rows = B)
    const Model m = rel(sig, 2, 3, {r, r, r.transpose()});
    const Matrix v = eval(name_of(generator_term(sig.generators()[0])), m);
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 3; ++y)
        CHECK(std::get<bool>(v.at(x * 3 + y, 0)) == std::get<bool>(r.at(y, x)));
  }
}

TEST_CASE("coname_of") {
  const Signature sig = ab_signature();
  CHECK(equal_diagrams(coname_of(identity(A)), counit_term(A), sig));

  SUBCASE("map-state duality round trip on random generator terms") {
    Signature s2 = ab_signature();
    s2.add_generator({"k", B, B});
    s2.add_generator({"j", A, A});
    std::mt19937_64 rng(9);
    TermGen gen(rng, s2);
    int tested = 0;
    for (int tries = 0; tries < 500 && tested < 20; ++tries) {
      const TypedTerm f = gen.from(A, 2);
      if (f.cod != B) continue;
      ++tested;
      const TypedTerm back =
          compose(tensor(coname_of(f), identity(B)), tensor(identity(A), unit_term(B)));
      CHECK(equal_diagrams(back, f, s2));
    }
    CHECK(tested == 20);
  }

  SUBCASE("fdvec coname sends e_i (x) e_j* to m_ij") {
    std::mt19937_64 rng(13);
    const Matrix f = random_matrix(rng, rational_algebra(), 3, 2);
    const Model m = fdvec(sig, 2, 3, {f, f, f.transpose()});
    const Matrix c = eval(coname_of(generator_term(sig.generators()[0])), m);
    REQUIRE(c.rows() == 1);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(c.at(0, i * 3 + j) == f.at(j, i));
  }
}

TEST_CASE("dual_of") {
  const Signature sig = ab_signature();
  CHECK(equal_diagrams(dual_of(identity(A)), identity(dual_object(A)), sig));
  const TypedTerm f = generator_term(sig.generators()[0]);
  CHECK(dual_of(f).dom == dual_object(B));
  CHECK(dual_of(f).cod == dual_object(A));

  SUBCASE("rel dual is the converse") {
    const Matrix r = bool_matrix({{1, 0}, {0, 0}, {1, 1}});
    const Model m = rel(sig, 2, 3, {r, r, r.transpose()});
    CHECK(eval(dual_of(f), m) == r.transpose());
  }
  SUBCASE("fdvec dual is the transpose") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
      const Matrix g = random_matrix(rng, rational_algebra(), 3, 3);
      const Model m = fdvec(sig, 3, 3, {g, g, g});
      CHECK(eval(dual_of(f), m) == g.transpose());
    }
  }
  SUBCASE("dual twice gives back every generator") {
    std::mt19937_64 rng(19);
    Signature s = fuzz_signature();
    for (const auto& g : s.generators())
      CHECK(equal_diagrams(dual_of(dual_of(generator_term(g))), generator_term(g), s));
  }
}

TEST_CASE("trace_term") {
  const Signature sig = ab_signature();
  const Matrix zero2 = rational_matrix({{0, 0}, {0, 0}});
  SUBCASE("trace of the identity is the dimension") {
    const Model m = fdvec(sig, 3, 2, {rational_matrix({{0, 0, 0}, {0, 0, 0}}),
                                      rational_matrix({{0, 0, 0}, {0, 0, 0}}),
                                      rational_matrix({{0, 0}, {0, 0}, {0, 0}})});
    const Matrix t = eval(trace_term(identity(A)), m);
    CHECK(t == Matrix::scalar(rational_algebra(), mpq_class(3)));
  }
  SUBCASE("rel trace of the identity on a two-element set is true") {
    const Matrix r = bool_matrix({{0, 0}, {0, 0}});
    const Model m = rel(sig, 2, 2, {r, r, r});
    CHECK(eval(trace_term(identity(A)), m) == Matrix::scalar(boolean_algebra(), true));
  }
  SUBCASE("cyclicity over rationals") {
    Signature s;
    s.add_object("A");
    s.add_generator({"f", A, A});
    s.add_generator({"g", A, A});
    std::mt19937_64 rng(23);
    const TypedTerm f = generator_term(s.generators()[0]), g = generator_term(s.generators()[1]);
    for (int i = 0; i < 20; ++i) {
      ModelSpec spec{ModelKind::FdVec, rational_algebra(), {{"A", 3}}, {}, {}};
      const Matrix mf = random_matrix(rng, rational_algebra(), 3, 3);
      const Matrix mg = random_matrix(rng, rational_algebra(), 3, 3);
      spec.generators = {{s.generators()[0], mf}, {s.generators()[1], mg}};
      const Model m = build_model(spec);
      const Matrix lhs = eval(trace_term(compose(g, f)), m);
      CHECK(lhs == eval(trace_term(compose(f, g)), m));
      // Diagonal-sum oracle.
      const Matrix prod = mg * mf;
      mpq_class sum = 0;
      for (int k = 0; k < 3; ++k) sum += std::get<mpq_class>(prod.at(k, k));
      CHECK(lhs == Matrix::scalar(rational_algebra(), sum));
    }
  }
  SUBCASE("partial trace shape errors") {
    try {
      trace_term(generator_term(sig.generators()[0]), A);
      FAIL("expected TraceShapeMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TraceShapeMismatch);
    }
    const TypedTerm t = trace_term(tensor(identity(B), identity(A)), A);
    CHECK(t.dom == B);
    CHECK(t.cod == B);
    CHECK(equal_diagrams(t, identity(B), sig) == false);  // carries a free loop on A
    CHECK(equal_diagrams(t, tensor(trace_term(identity(A)), identity(B)), sig));
  }
}

TEST_CASE("permutations") {
  Signature sig;
  sig.add_object("A");
  sig.add_object("B");
  SUBCASE("identity permutation gives the identity term") {
    const TypedTerm t = perm_term(Permutation({1, 2}), {A, B});
    CHECK(t.term == identity(A * B).term);
  }
  SUBCASE("one adjacent swap") {
    const TypedTerm t = perm_term(Permutation({2, 1, 3, 4}), {A, A, A, A});
    CHECK(t.term == tensor(tensor(symmetry(A, A), identity(A)), identity(A)).term);
  }
  SUBCASE("the four-strand identity") {
    const Permutation p1324({1, 3, 2, 4}), p2134({2, 1, 3, 4}), p3214({3, 2, 1, 4});
    CHECK((p1324 * p2134).images() == std::vector<int>{3, 1, 2, 4});
    CHECK(p1324 * p2134 == p3214 * p1324);
    const std::vector<ObjectExpr> w{A, A, A, A};
    CHECK(equal_diagrams(compose(perm_term(p1324, w), perm_term(p2134, w)),
                         compose(perm_term(p3214, w), perm_term(p1324, w)), sig));
  }
  SUBCASE("invalid permutations") {
    CHECK_THROWS_AS(Permutation({1, 1}), Error);
    CHECK_THROWS_AS(Permutation({0, 1}), Error);
    try {
      perm_term(Permutation({2, 1}), {A});
      FAIL("expected NotAPermutation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAPermutation);
    }
  }
  SUBCASE("perm_term is a homomorphism") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 1 + pick(rng, 5);
      std::vector<int> a(n), b(n);
      std::iota(a.begin(), a.end(), 1);
      std::iota(b.begin(), b.end(), 1);
      std::shuffle(a.begin(), a.end(), rng);
      std::shuffle(b.begin(), b.end(), rng);
      std::vector<ObjectExpr> fs;
      for (std::size_t k = 0; k < n; ++k) fs.push_back(pick(rng, 2) ? A : dual_object(B));
      const Permutation p(a), q(b);
      // perm_term(q) permutes fs; perm_term(p) acts on the permuted word.
      std::vector<ObjectExpr> moved(n);
      for (std::size_t k = 0; k < n; ++k) moved[q(static_cast<int>(k) + 1) - 1] = fs[k];
      const TypedTerm lhs = perm_term(p * q, fs);
      const TypedTerm rhs = compose(perm_term(p, moved), perm_term(q, fs));
      CHECK(equal_diagrams(lhs, rhs, sig));
    }
  }
  SUBCASE("perm_term moves factor i to position p(i)") {
    const TypedTerm t = perm_term(Permutation({3, 1, 2}), {A, B, dual_object(A)});
    CHECK(t.cod == B * dual_object(A) * A);
  }
}

TEST_CASE("distinct generators keep distinct names") {
  const Signature sig = fuzz_signature();
  const auto& gens = sig.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (gens[i].dom != gens[j].dom || gens[i].cod != gens[j].cod) continue;
      const bool same = i == j;
      CHECK(equal_diagrams(name_of(generator_term(gens[i])), name_of(generator_term(gens[j])), sig) ==
            same);
    }
  // Random generator terms of a common type: names agree exactly when the terms do.
  std::mt19937_64 rng(31);
  TermGen gen(rng, sig);
  for (int i = 0; i < 50; ++i) {
    const TypedTerm f = gen.from(ObjectExpr::base("A"), 2);
    const TypedTerm g = gen.from(ObjectExpr::base("A"), 2);
    if (f.cod != g.cod) continue;
    CHECK(equal_diagrams(f, g, sig) == equal_diagrams(name_of(f), name_of(g), sig));
  }
}
