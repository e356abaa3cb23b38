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

#include <functional>
#include <random>

#include "diagram.hpp"
#include "dsl.hpp"
#include "../support/random_terms.hpp"

using namespace ccat;
using namespace ccat::testing;

namespace {

const ObjectExpr A = ObjectExpr::base("A");
const ObjectExpr B = ObjectExpr::base("B");

Error error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::Usage, "unreachable");
}

// Text covered by a single-line span.
std::string covered(const std::string& text, const SourceSpan& s) {
  std::size_t pos = 0;
  for (int line = 1; line < s.line; ++line) pos = text.find('\n', pos) + 1;
  return text.substr(pos + s.col - 1, s.end_col - s.col);
}

void collect_refs(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == ExprKind::Ref) out.push_back(&e);
  for (const auto& k : e.kids) collect_refs(k, out);
}

const char* kHeader = "object A, B;\ndagger;\ngen f : A -> B;\ngen g : B -> A;\n"
                      "gen m : A * A -> B;\ngen h : A -> A;\n";

}  // namespace

TEST_CASE("triangle identity term") {
  const Program p = load_program("object A;\nterm yank = (id[A] * eta[A]) ; (eps[A] * id[A]);\n");
  const TypedTerm* yank = p.term("yank");
  REQUIRE(yank);
  CHECK(yank->dom == A);
  CHECK(yank->cod == A);
  CHECK(equal_diagrams(*yank, identity(A), p.signature));
}

TEST_CASE("composition mismatch points at the offending operand") {
  const std::string src = "object A, B; gen f : A -> B; term bad = f ; f;";
  const Error e = error_of([&] { load_program(src); });
  CHECK(e.code() == ErrorCode::CompositionMismatch);
  CHECK(e.span().line == 1);
  CHECK(e.span().col == 45);
  CHECK(covered(src, e.span()) == "f");
  CHECK(std::string(e.what()).rfind("1:45:", 0) == 0);
}

TEST_CASE("Bell state is the name of the identity") {
  const Program p = load_program("object A;\nterm bell = eta[A];\nterm named = name(id[A]);\n");
  CHECK(equal_diagrams(*p.term("bell"), *p.term("named"), p.signature));
  CHECK(equal_diagrams(elaborate_expr("eta[A]", p), elaborate_expr("name(id[A])", p),
                       p.signature));
}

TEST_CASE("every construct elaborates to the matching term") {
  const std::string src = std::string(kHeader) +
                          "term a = f ; g;\n"
                          "term b = f * h;\n"
                          "term c = sym[A, dual(B)];\n"
                          "term d = dagger(f);\n"
                          "term e = coname(f);\n"
                          "term n = name(g);\n"
                          "term du = dual(f);\n"
                          "term t1 = tr(h);\n"
                          "term t2 = tr[A]((id[A] * h) ; sym[A, A]);\n"
                          "term w = id[dual(A * B) * I];\n"
                          "term reuse = a ; h;\n"
                          "eq law : f ; g = h;\n";
  const Program p = load_program(src);
  const Signature& sig = p.signature;
  const TypedTerm f = generator_term(*sig.find_generator("f"));
  const TypedTerm g = generator_term(*sig.find_generator("g"));
  const TypedTerm h = generator_term(*sig.find_generator("h"));
  CHECK(p.term("a")->term == then(f, g).term);
  CHECK(p.term("b")->term == tensor(f, h).term);
  CHECK(p.term("c")->term == symmetry(A, dual_object(B)).term);
  CHECK(p.term("d")->term == dagger(f).term);
  CHECK(p.term("e")->term == coname_of(f).term);
  CHECK(p.term("n")->term == name_of(g).term);
  CHECK(p.term("du")->term == dual_of(f).term);
  CHECK(p.term("t1")->term == trace_term(h).term);
  CHECK(p.term("t2")->term == trace_term(then(tensor(identity(A), h), symmetry(A, A)), A).term);
  CHECK(p.term("w")->dom == dual_object(A * B));
  CHECK(p.term("reuse")->term == then(then(f, g), h).term);
  REQUIRE(p.equation("law"));
  CHECK(p.equation("law")->lhs.term == then(f, g).term);
  CHECK(p.terms.size() == 11);
}

TEST_CASE("tensor binds tighter than composition") {
  const Program p = load_program(std::string(kHeader) + "term x = f * h ; g * f;\n");
  const Signature& sig = p.signature;
  const TypedTerm f = generator_term(*sig.find_generator("f"));
  const TypedTerm g = generator_term(*sig.find_generator("g"));
  const TypedTerm h = generator_term(*sig.find_generator("h"));
  CHECK(p.term("x")->term == then(tensor(f, h), tensor(g, f)).term);
}

TEST_CASE("layout does not matter") {
  const std::string a = std::string(kHeader) + "term x = (f ; g) * h;\n";
  const std::string b =
      "object   A ,B ;dagger;gen f:A->B;gen g:B->A; // comment\n gen m : A*A -> B;\n# other\n"
      "gen h\n:\nA\n->\nA;term x=(f;g)*h;";
  CHECK(same_tree(parse_source(a), parse_source(b)));
}

TEST_CASE("lex, parse and resolve errors carry spans") {
  Error lexed = error_of([] { parse_source("object A;\nterm t = $;"); });
  CHECK(lexed.code() == ErrorCode::LexError);
  CHECK(lexed.span().line == 2);
  CHECK(lexed.span().col == 10);

  Error parsed = error_of([] { parse_source("object A;\nterm t = id[A] *;"); });
  CHECK(parsed.code() == ErrorCode::ParseError);
  CHECK(parsed.span().line == 2);
  CHECK(parsed.span().col == 17);
  CHECK(std::find(parsed.expected().begin(), parsed.expected().end(), "'id'") !=
        parsed.expected().end());

  Error missing = error_of([] { parse_source("object A\ngen f : A -> A;"); });
  CHECK(missing.code() == ErrorCode::ParseError);
  CHECK(missing.span().line == 2);
  CHECK(missing.expected() == std::vector<std::string>{"';'"});

  Error head = error_of([] { parse_source("obj A;"); });
  CHECK(head.code() == ErrorCode::ParseError);
  CHECK(head.expected().size() == 5);

  Error unknown = error_of([] { load_program("object A;\nterm t = id[A] ; q;"); });
  CHECK(unknown.code() == ErrorCode::ResolveError);
  CHECK(unknown.span().line == 2);
  CHECK(unknown.span().col == 18);

  Error obj = error_of([] { load_program("object A;\ngen f : A -> C;"); });
  CHECK(obj.code() == ErrorCode::ResolveError);

  Error dup = error_of([] { load_program("object A;\ngen A : A -> A;"); });
  CHECK(dup.code() == ErrorCode::ResolveError);
  CHECK(dup.span().col == 5);

  Error dag = error_of([] { load_program("object A;\ngen f : A -> A;\nterm t = dagger(f);"); });
  CHECK(dag.code() == ErrorCode::DaggerUnavailable);
  CHECK(dag.span().line == 3);

  Error eq = error_of([] { load_program("object A, B;\ngen f : A -> B;\neq bad : f = id[A];"); });
  CHECK(eq.code() == ErrorCode::TypeMismatch);

  Error tr = error_of([] { load_program("object A, B;\ngen f : A -> B;\nterm t = tr(f);"); });
  CHECK(tr.code() == ErrorCode::TraceShapeMismatch);
  CHECK(tr.span().line == 3);
  CHECK(tr.span().col == 10);
}

TEST_CASE("spans cover their tokens") {
  const std::string src = std::string(kHeader) +
                          "term long_name = (f ; g)\n  * coname(h) ; m;\n"
                          "eq e1 : f ; g = h;\n";
  const SourceFile sf = parse_source(src);
  std::vector<const Expr*> refs;
  for (const auto& d : sf.decls) {
    for (std::size_t i = 0; i < d.names.size(); ++i)
      CHECK(covered(src, d.name_spans[i]) == d.names[i]);
    for (const auto& e : d.exprs) collect_refs(e, refs);
  }
  CHECK(refs.size() == 7);
  for (const Expr* r : refs) CHECK(covered(src, r->span) == r->name);
  const Expr& top = sf.decls[6].exprs[0];
  CHECK(top.span.line == 7);
  CHECK(top.span.end_line == 8);
  CHECK(covered(src, top.kids[0].kids[0].span) == "(f ; g)");
}

TEST_CASE("print and parse round trip") {
  std::mt19937_64 rng(61);
  const Signature sig = fuzz_signature();
  TermGen gen(rng, sig, true);
  std::string header = "object A, B;\ndagger;\n";
  for (const auto& g : sig.generators())
    header += "gen " + g.name + " : " + g.dom.source_str() + " -> " + g.cod.source_str() + ";\n";
  for (int i = 0; i < 200; ++i) {
    const TypedTerm t = i % 4 == 0 ? gen.scalar(2) : gen.any(3);
    const std::string src = header + "term tt = " + print_expr(term_expr(t.term)) + ";\n" +
                            "term uu = dual(tr[I](name(tt) * coname(tt)));\n";
    const SourceFile first = parse_source(src);
    const std::string printed = print_source(first);
    const SourceFile second = parse_source(printed);
    CHECK(same_tree(first, second));
    CHECK(print_source(second) == printed);
    const Program p = elaborate(second);
    CHECK(p.term("tt")->term == t.term);
    CHECK(p.term("tt")->dom == t.dom);
    CHECK(p.term("tt")->cod == t.cod);
  }
}

TEST_CASE("applicative printing reverses composition") {
  const Program p = load_program(std::string(kHeader) + "term x = f ; g ; h;\n");
  const Expr e = term_expr(p.term("x")->term);
  CHECK(print_expr(e) == "f ; g ; h");
  CHECK(print_expr(e, PrintOrder::Applicative) == "h . g . f");
}

TEST_CASE("semicolon separates declarations") {
  const Program p = load_program(std::string(kHeader) + "term a = f; term b = g;eq e: h=h;");
  CHECK(p.terms.size() == 2);
  CHECK(p.term("a")->cod == B);
  CHECK(p.term("b")->cod == A);
  CHECK(p.equations.size() == 1);
}
