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
#include "../support/dot_check.hpp"
#include "../support/models.hpp"
#include "../support/oracle.hpp"
#include "../support/random_terms.hpp"

using namespace ccat;
using namespace ccat::testing;

namespace {

const ObjectExpr A = ObjectExpr::base("A");
const ObjectExpr B = ObjectExpr::base("B");
const ObjectExpr Ad = dual_object(A);

Signature sig_f() {
  Signature sig;
  sig.add_object("A");
  sig.add_object("B");
  sig.add_generator({"f", A, A});
  sig.add_generator({"g", B, B});
  sig.add_generator({"r", A, B});
  sig.set_dagger_closed(true);
  return sig;
}

TypedTerm yank_left(const ObjectExpr& w) {
  return then(tensor(identity(w), unit_term(w)), tensor(counit_term(w), identity(w)));
}

TypedTerm yank_right(const ObjectExpr& w) {
  const ObjectExpr wd = dual_object(w);
  return then(tensor(unit_term(w), identity(wd)), tensor(identity(wd), counit_term(w)));
}

Model fdvec_dim(const Signature& sig, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_model(rng, sig, ModelKind::FdVec, rational_algebra(),
                      std::vector<std::size_t>(sig.objects().size(), d));
}

}  // namespace

TEST_CASE("to_diagram") {
  const Signature sig = sig_f();
  SUBCASE("yanking straightens to a single wire") {
    const Diagram d = to_diagram(yank_left(A), sig);
    CHECK(d.nodes().empty());
    CHECK(d.loops().empty());
    CHECK(d.partner(d.input_port(0)) == d.output_port(0));
    d.validate();
  }
  SUBCASE("trace of the identity keeps one free loop") {
    const Diagram d = to_diagram(trace_term(identity(A)), sig);
    CHECK(d.num_inputs() == 0);
    CHECK(d.num_outputs() == 0);
    REQUIRE(d.loops().size() == 1);
    CHECK(d.loops()[0].word.empty());
    CHECK(d.loops()[0].base == "A");
    const Model m = fdvec_dim(sig, 3, 1);
    CHECK(eval(trace_term(identity(A)), m) == Matrix::scalar(m.algebra(), mpq_class(3)));
  }
  SUBCASE("interchange gives identical diagrams") {
    const TypedTerm f = generator_term(*sig.find_generator("f"));
    const TypedTerm g = generator_term(*sig.find_generator("g"));
    const TypedTerm t1 = then(tensor(identity(A), g), tensor(f, identity(B)));
    const TypedTerm t2 = then(tensor(f, identity(B)), tensor(identity(A), g));
    CHECK(canonical_key(to_diagram(t1, sig)) == canonical_key(to_diagram(t2, sig)));
    CHECK(canonical_key(to_diagram(t1, sig)) == canonical_key(to_diagram(tensor(f, g), sig)));
  }
  SUBCASE("every port has a partner and labels agree") {
    std::mt19937_64 rng(41);
    const Signature fs = fuzz_signature();
    TermGen gen(rng, fs, true);
    for (int i = 0; i < 200; ++i) {
      const TypedTerm t = gen.any(4);
      const Diagram d = to_diagram(t, fs);
      CHECK_NOTHROW(d.validate());
      CHECK(d.dom() == t.dom);
      CHECK(d.cod() == t.cod);
    }
  }
}

TEST_CASE("canonical keys") {
  const Signature sig = sig_f();
  const auto key = [&](const TypedTerm& t) { return canonical_key(to_diagram(t, sig)); };
  CHECK(key(yank_left(A)) == key(identity(A)));
  CHECK(key(yank_right(A)) == key(identity(Ad)));
  CHECK(key(compose(symmetry(A, A), symmetry(A, A))) == key(identity(A * A)));
  CHECK(!(key(symmetry(A, A)) == key(identity(A * A))));

  const TypedTerm two_loops = tensor(trace_term(identity(A)), trace_term(identity(A)));
  const TypedTerm one_trace = trace_term(identity(A * A));
  CHECK(key(two_loops) == key(one_trace));
  const Model m = fdvec_dim(sig, 2, 2);
  const Matrix four = Matrix::scalar(m.algebra(), mpq_class(4));
  CHECK(eval(two_loops, m) == four);
  CHECK(eval(one_trace, m) == four);

  SUBCASE("loops of different generators or orientation differ") {
    const TypedTerm f = generator_term(*sig.find_generator("f"));
    CHECK(!(key(trace_term(f)) == key(trace_term(identity(A)))));
    CHECK(!(key(trace_term(f)) == key(trace_term(dagger(f)))));
    CHECK(key(trace_term(compose(f, dagger(f)))) == key(trace_term(compose(dagger(f), f))));
  }
  SUBCASE("keys are deterministic and insensitive to node order") {
    std::mt19937_64 rng(43);
    const Signature fs = fuzz_signature();
    TermGen gen(rng, fs, true);
    for (int i = 0; i < 100; ++i) {
      const TypedTerm a = gen.any(3), b = gen.any(3);
      const auto k1 = canonical_key(to_diagram(tensor(a, b), fs));
      CHECK(k1 == canonical_key(to_diagram(tensor(a, b), fs)));
      // Same diagram built with b's nodes first.
      const TypedTerm swapped =
          then(then(symmetry(a.dom, b.dom), tensor(b, a)), symmetry(b.cod, a.cod));
      CHECK(k1 == canonical_key(to_diagram(swapped, fs)));
    }
  }
}

TEST_CASE("equal_diagrams") {
  const Signature sig = sig_f();
  CHECK(equal_diagrams(name_of(identity(A)), unit_term(A), sig));
  const TypedTerm cups = tensor(unit_term(A), unit_term(A));
  const TypedTerm crossed = compose(perm_term(Permutation({3, 2, 1, 4}), {Ad, A, Ad, A}), cups);
  CHECK_FALSE(equal_diagrams(cups, crossed, sig));
  const Model m = fdvec_dim(sig, 2, 3);
  CHECK_FALSE(eval(cups, m) == eval(crossed, m));

  CHECK_THROWS_AS(equal_diagrams(identity(A), identity(B), sig), Error);
  try {
    equal_diagrams(identity(A), identity(B), sig);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TypeMismatch);
  }

  SUBCASE("scalars commute") {
    std::mt19937_64 rng(47);
    const Signature fs = fuzz_signature();
    TermGen gen(rng, fs);
    for (int i = 0; i < 50; ++i) {
      const TypedTerm s = gen.scalar(2), t = gen.scalar(2);
      CHECK(equal_diagrams(compose(s, t), compose(t, s), fs));
    }
  }
}

TEST_CASE("twelve structural congruences leave the key unchanged") {
  std::mt19937_64 rng(53);
  const Signature fs = fuzz_signature();
  TermGen gen(rng, fs, true);
  const auto key = [&](const TypedTerm& t) { return canonical_key(to_diagram(t, fs)); };
  for (int i = 0; i < 40; ++i) {
    const TypedTerm f = gen.from(A, 2), g = gen.from(f.cod, 2), h = gen.from(g.cod, 2);
    const TypedTerm p = gen.any(2), q = gen.any(2);
    // 1, 2: associativity of composition and tensor.
    CHECK(key(then(then(f, g), h)) == key(then(f, then(g, h))));
    CHECK(key(tensor(tensor(f, p), q)) == key(tensor(f, tensor(p, q))));
    // 3, 4: units.
    CHECK(key(then(identity(f.dom), f)) == key(f));
    CHECK(key(tensor(identity(ObjectExpr{}), f)) == key(f));
    // 5: interchange.
    CHECK(key(then(tensor(f, p), tensor(g, identity(p.cod)))) ==
          key(tensor(then(f, g), p)));
    // 6: sliding boxes past each other.
    CHECK(key(then(tensor(f, identity(p.dom)), tensor(identity(f.cod), p))) ==
          key(then(tensor(identity(f.dom), p), tensor(f, identity(p.cod)))));
    // 7: naturality of the symmetry.
    CHECK(key(then(tensor(f, p), symmetry(f.cod, p.cod))) ==
          key(then(symmetry(f.dom, p.dom), tensor(p, f))));
    // 8: the symmetry is self-inverse.
    CHECK(key(then(symmetry(f.dom, p.dom), symmetry(p.dom, f.dom))) ==
          key(identity(f.dom * p.dom)));
    // 9: hexagon.
    if (q.dom.size() + p.dom.size() > 0)
      CHECK(key(symmetry(f.dom, p.dom * q.dom)) ==
            key(then(tensor(symmetry(f.dom, p.dom), identity(q.dom)),
                     tensor(identity(p.dom), symmetry(f.dom, q.dom)))));
    // 10, 11: triangle identities on arbitrary words.
    CHECK(key(then(yank_left(f.dom), f)) == key(f));
    CHECK(key(then(f, yank_right(dual_object(f.cod)))) == key(f));
    // 12: dagger is a contravariant involution.
    CHECK(key(dagger(then(f, g))) == key(then(dagger(g), dagger(f))));
    CHECK(key(dagger(dagger(f))) == key(f));
  }
}

TEST_CASE("enumerate_matches") {
  const Signature sig = sig_f();
  const Diagram host = to_diagram(tensor(unit_term(A), unit_term(A)), sig);
  CHECK(enumerate_matches(host, to_diagram(unit_term(A), sig)).size() == 2);
  const Diagram with_f = to_diagram(generator_term(*sig.find_generator("f")), sig);
  CHECK(enumerate_matches(host, with_f).empty());
  const TypedTerm f = generator_term(*sig.find_generator("f"));
  const Diagram full = to_diagram(then(f, tensor(identity(A), unit_term(B))), sig);
  const auto self = enumerate_matches(full, full);
  CHECK(self.size() == 1);
  SUBCASE("deterministic order") {
    const Diagram d = to_diagram(then(then(f, f), f), sig);
    const auto m1 = enumerate_matches(d, with_f);
    const auto m2 = enumerate_matches(d, with_f);
    CHECK(m1.size() == 3);
    CHECK(m1 == m2);
  }
}

TEST_CASE("apply_equation") {
  const Signature sig = sig_f();
  const TypedTerm f = generator_term(*sig.find_generator("f"));
  SUBCASE("identity rewrite keeps the key") {
    const Equation eq = make_equation("refl", f, f);
    const Diagram host = to_diagram(trace_term(then(f, f)), sig);
    const Diagram host2 = to_diagram(then(f, then(f, f)), sig);
    for (const auto& site : enumerate_matches(host2, to_diagram(eq.lhs, sig))) {
      const Diagram out = apply_equation(host2, eq, sig, site);
      CHECK(canonical_key(out) == canonical_key(host2));
      CHECK(out.dom() == host2.dom());
      CHECK(out.cod() == host2.cod());
    }
    (void)host;
  }
  SUBCASE("symmetry collapse inside the trace loop gives Tr(f) times the identity") {
    const Equation twist = make_equation("twist", symmetry(A, A), identity(A * A));
    const TypedTerm ctx = trace_term(then(tensor(identity(A), f), symmetry(A, A)), A);
    const Diagram host = to_diagram(ctx, sig);
    const auto sites = enumerate_matches(host, to_diagram(twist.lhs, sig));
    // Two wires carry A, so the crossing can be cut open in either assignment.
    REQUIRE(sites.size() == 2);
    const auto target = canonical_key(to_diagram(tensor(trace_term(f), identity(A)), sig));
    for (const auto& site : sites) {
      const Diagram out = apply_equation(host, twist, sig, site);
      CHECK(canonical_key(out) == target);
      CHECK(out.dom() == A);
      CHECK(out.cod() == A);
    }
  }
  SUBCASE("a bad site is rejected") {
    const Equation eq = make_equation("e", f, f);
    const Diagram host = to_diagram(identity(A), sig);
    Match bogus{{0}, {}, {}};
    try {
      apply_equation(host, eq, sig, bogus);
      FAIL("expected NoSuchMatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoSuchMatch);
    }
  }
  SUBCASE("equations need equal types") {
    try {
      make_equation("bad", f, identity(B));
      FAIL("expected TypeMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TypeMismatch);
    }
  }
  SUBCASE("disjoint sites commute") {
    const TypedTerm g = generator_term(*sig.find_generator("g"));
    const TypedTerm r = generator_term(*sig.find_generator("r"));
    const Equation eq = make_equation("fr", then(f, r), then(r, g));
    const TypedTerm host_t = tensor(then(f, r), tensor(then(f, r), then(f, r)));
    const Diagram host = to_diagram(host_t, sig);
    const Diagram pat = to_diagram(eq.lhs, sig);
    const auto sites = enumerate_matches(host, pat);
    REQUIRE(sites.size() == 3);
    // Rewrite the first site, then the remaining ones in both orders.
    auto apply_all = [&](std::vector<int> order) {
      Diagram d = host;
      for (int idx : order) {
        (void)idx;
        const auto s = enumerate_matches(d, pat);
        REQUIRE(!s.empty());
        d = apply_equation(d, eq, sig, s[idx % s.size()]);
      }
      return canonical_key(d);
    };
    const auto k1 = apply_all({0, 0, 0});
    const auto k2 = apply_all({2, 1, 0});
    CHECK(k1 == k2);
    CHECK(k1 == canonical_key(to_diagram(tensor(then(r, g), tensor(then(r, g), then(r, g))), sig)));
  }
  SUBCASE("rewrites with equal loop multisets keep the loop count") {
    const Equation eq = make_equation("ff", then(f, f), f);
    const TypedTerm host_t =
        tensor(trace_term(identity(A)), tensor(then(f, f), trace_term(then(f, f))));
    const Diagram host = to_diagram(host_t, sig);
    for (const auto& s : enumerate_matches(host, to_diagram(eq.lhs, sig))) {
      const Diagram out = apply_equation(host, eq, sig, s);
      CHECK(out.loops().size() == host.loops().size());
    }
  }
}

TEST_CASE("render_dot") {
  const Signature sig = sig_f();
  const DotGraph id = parse_dot(render_dot(to_diagram(identity(A), sig)));
  REQUIRE(id.ok);
  CHECK(id.nodes.count("in0") == 1);
  CHECK(id.nodes.count("out0") == 1);
  REQUIRE(id.edges.size() == 1);
  CHECK(id.edges[0] == std::pair<std::string, std::string>{"in0", "out0"});
  CHECK(id.edge_labels[0] == "A");

  std::mt19937_64 rng(59);
  const Signature fs = fuzz_signature();
  TermGen gen(rng, fs, true);
  for (int i = 0; i < 50; ++i) {
    const Diagram d = to_diagram(gen.any(4), fs);
    const std::string text = render_dot(d);
    const DotGraph g = parse_dot(text);
    CHECK_MESSAGE(g.ok, g.error << "\n" << text);
    for (std::size_t k = 0; k < d.nodes().size(); ++k) CHECK(g.nodes.count("n" + std::to_string(k)));
    // Each edge endpoint is a declared node.
    for (const auto& [a, b] : g.edges) {
      CHECK(g.nodes.count(a) == 1);
      CHECK(g.nodes.count(b) == 1);
    }
  }
}

TEST_CASE("evaluation agrees with an independent contraction of the diagram") {
  std::mt19937_64 rng(61);
  const Signature fs = fuzz_signature();
  TermGen gen(rng, fs, true);
  auto models = builtin_models(rng, fs);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    const TypedTerm t = gen.any(3);
    const Diagram d = to_diagram(t, fs);
    if (d.wires().size() > 12) continue;
    for (const auto& m : models) {
      if (!m.algebra()->has_conj() && t.term.str().find("dagger") != std::string::npos) continue;
      CHECK(eval(t, m) == contract(d, m, fs));
      ++checked;
    }
  }
  CHECK(checked > 200);
}
