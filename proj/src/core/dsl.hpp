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

// Source language for signatures, terms and equations.
//
//   object A, B;
//   dagger;
//   gen f : A -> B;
//   term t = (id[A] * eta[A]) ; (eps[A] * id[A]);
//   eq law : f ; g = id[A];
//
// `;` composes left to right and binds weaker than `*`.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "error.hpp"
#include "term.hpp"

namespace ccat {

enum class TokenKind { Name, Keyword, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceSpan span;
};

std::vector<Token> lex(const std::string& text);

enum class ExprKind { Ref, Id, Eta, Eps, Sym, Then, Tensor, Dagger, Name, Coname, Dual, Trace };

struct Expr {
  ExprKind kind = ExprKind::Ref;
  std::string name;
  std::vector<ObjectExpr> words;
  std::vector<Expr> kids;
  SourceSpan span;
};

/// Structural equality ignoring spans.
bool same_tree(const Expr& a, const Expr& b);

enum class DeclKind { Object, Dagger, Gen, Term, Eq };

struct Decl {
  DeclKind kind = DeclKind::Object;
  std::vector<std::string> names;
  ObjectExpr dom, cod;
  std::vector<Expr> exprs;
  SourceSpan span;
  /// Span of each entry of `names`.
  std::vector<SourceSpan> name_spans;
};

struct SourceFile {
  std::vector<Decl> decls;
};

bool same_tree(const SourceFile& a, const SourceFile& b);

SourceFile parse_source(const std::string& text);

enum class PrintOrder { Diagrammatic, Applicative };

/// Canonical source text. Applicative order writes `g . f` for `f ; g` and
/// is for display only; the parser reads diagrammatic order.
std::string print_expr(const Expr& e, PrintOrder order = PrintOrder::Diagrammatic);
std::string print_source(const SourceFile& f);

/// Source expression for an elaborated term.
Expr term_expr(const Term& t);

struct Program {
  Signature signature;
  std::vector<std::pair<std::string, TypedTerm>> terms;
  std::vector<Equation> equations;
  std::map<std::string, SourceSpan> spans;

  const TypedTerm* term(const std::string& name) const;
  const Equation* equation(const std::string& name) const;
};

/// Resolves names and typechecks every declaration.
Program elaborate(const SourceFile& f);
Program load_program(const std::string& text);
Program load_program_file(const std::string& path);

/// Elaborates one expression against a program, e.g. from the command line.
TypedTerm elaborate_expr(const std::string& text, const Program& p);

}  // namespace ccat
