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

#include "dsl.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace ccat {

namespace {

const std::set<std::string> kKeywords = {"object", "gen", "term", "eq",     "dagger", "id", "eta",
                                         "eps",    "sym", "name", "coname", "dual",   "tr", "I"};

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
  return {a.line, a.col, b.end_line, b.end_col};
}

}  // namespace

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.span.line = line;
    t.span.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
        ++j;
      t.text = text.substr(i, j - i);
      t.kind = kKeywords.count(t.text) ? TokenKind::Keyword : TokenKind::Name;
      advance(j - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      t.kind = TokenKind::Punct;
      t.text = "->";
      advance(2);
    } else if (std::string(";:=*()[],").find(c) != std::string::npos) {
      t.kind = TokenKind::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      SourceSpan s{line, col, line, col + 1};
      throw Error(ErrorCode::LexError, std::string("unexpected character '") + c + "'", s,
                  {"name", "keyword", "punctuation"});
    }
    t.span.end_line = line;
    t.span.end_col = col;
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = TokenKind::End;
  end.span = {line, col, line, col};
  out.push_back(end);
  return out;
}

bool same_tree(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.words != b.words || a.kids.size() != b.kids.size())
    return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!same_tree(a.kids[i], b.kids[i])) return false;
  return true;
}

bool same_tree(const SourceFile& a, const SourceFile& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    const Decl &x = a.decls[i], &y = b.decls[i];
    if (x.kind != y.kind || x.names != y.names || x.dom != y.dom || x.cod != y.cod ||
        x.exprs.size() != y.exprs.size())
      return false;
    for (std::size_t k = 0; k < x.exprs.size(); ++k)
      if (!same_tree(x.exprs[k], y.exprs[k])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SourceFile file() {
    SourceFile f;
    while (peek().kind != TokenKind::End) f.decls.push_back(decl());
    return f;
  }

  Expr standalone() {
    Expr e = expr();
    if (peek().kind != TokenKind::End) fail({"';'", "'*'", "end of input"});
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is(const std::string& text, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind != TokenKind::End && t.kind != TokenKind::Name && t.text == text;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string got = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    std::string list;
    for (std::size_t i = 0; i < expected.size(); ++i) list += (i ? ", " : "") + expected[i];
    throw Error(ErrorCode::ParseError, "expected " + list + ", got " + got, t.span,
                std::move(expected));
  }

  const Token& expect(const std::string& text) {
    if (!is(text)) fail({"'" + text + "'"});
    return take();
  }

  const Token& expect_name() {
    if (peek().kind != TokenKind::Name) fail({"name"});
    return take();
  }

  Decl decl() {
    Decl d;
    const Token& head = peek();
    d.span = head.span;
    if (is("object")) {
      take();
      d.kind = DeclKind::Object;
      do {
        const Token& n = expect_name();
        d.names.push_back(n.text);
        d.name_spans.push_back(n.span);
      } while (is(",") && (take(), true));
    } else if (is("dagger")) {
      take();
      d.kind = DeclKind::Dagger;
    } else if (is("gen")) {
      take();
      d.kind = DeclKind::Gen;
      const Token& n = expect_name();
      d.names.push_back(n.text);
      d.name_spans.push_back(n.span);
      expect(":");
      d.dom = word();
      expect("->");
      d.cod = word();
    } else if (is("term")) {
      take();
      d.kind = DeclKind::Term;
      const Token& n = expect_name();
      d.names.push_back(n.text);
      d.name_spans.push_back(n.span);
      expect("=");
      d.exprs.push_back(expr());
    } else if (is("eq")) {
      take();
      d.kind = DeclKind::Eq;
      const Token& n = expect_name();
      d.names.push_back(n.text);
      d.name_spans.push_back(n.span);
      expect(":");
      d.exprs.push_back(expr());
      expect("=");
      d.exprs.push_back(expr());
    } else {
      fail({"'object'", "'gen'", "'term'", "'eq'", "'dagger'"});
    }
    const Token& semi = expect(";");
    d.span = join(d.span, semi.span);
    return d;
  }

  // Object words.
  ObjectExpr word() {
    ObjectExpr w = word_atom();
    while (is("*")) {
      take();
      w = w * word_atom();
    }
    return w;
  }

  ObjectExpr word_atom() {
    if (peek().kind == TokenKind::Name) return ObjectExpr::base(take().text);
    if (is("I")) {
      take();
      return ObjectExpr{};
    }
    if (is("dual")) {
      take();
      expect("(");
      ObjectExpr w = word();
      expect(")");
      return dual_object(w);
    }
    if (is("(")) {
      take();
      ObjectExpr w = word();
      expect(")");
      return w;
    }
    fail({"object name", "'I'", "'dual'", "'('"});
  }

  bool starts_expr(std::size_t k) const {
    const Token& t = peek(k);
    if (t.kind == TokenKind::Name) return true;
    if (t.kind == TokenKind::End) return false;
    if (t.text == "dagger") return is("(", k + 1);
    return t.text == "(" || t.text == "id" || t.text == "eta" || t.text == "eps" ||
           t.text == "sym" || t.text == "name" || t.text == "coname" || t.text == "dual" ||
           t.text == "tr";
  }

  Expr expr() {
    Expr e = tensor();
    // `;` is both composition and terminator: it composes only when an
    // expression follows.
    while (is(";") && starts_expr(1)) {
      take();
      Expr r = tensor();
      Expr t;
      t.kind = ExprKind::Then;
      t.span = join(e.span, r.span);
      t.kids = {std::move(e), std::move(r)};
      e = std::move(t);
    }
    return e;
  }

  Expr tensor() {
    Expr e = unary();
    while (is("*")) {
      take();
      Expr r = unary();
      Expr t;
      t.kind = ExprKind::Tensor;
      t.span = join(e.span, r.span);
      t.kids = {std::move(e), std::move(r)};
      e = std::move(t);
    }
    return e;
  }

  Expr bracketed(ExprKind kind, const Token& head, std::size_t words) {
    Expr e;
    e.kind = kind;
    expect("[");
    for (std::size_t i = 0; i < words; ++i) {
      if (i) expect(",");
      e.words.push_back(word());
    }
    e.span = join(head.span, expect("]").span);
    return e;
  }

  Expr unary() {
    const Token head = peek();
    if (head.kind == TokenKind::Name) {
      take();
      Expr e;
      e.kind = ExprKind::Ref;
      e.name = head.text;
      e.span = head.span;
      return e;
    }
    if (is("(")) {
      take();
      Expr e = expr();
      const Token& close = expect(")");
      e.span = join(head.span, close.span);
      return e;
    }
    if (is("id")) return take(), bracketed(ExprKind::Id, head, 1);
    if (is("eta")) return take(), bracketed(ExprKind::Eta, head, 1);
    if (is("eps")) return take(), bracketed(ExprKind::Eps, head, 1);
    if (is("sym")) return take(), bracketed(ExprKind::Sym, head, 2);
    ExprKind kind;
    if (is("dagger")) kind = ExprKind::Dagger;
    else if (is("name")) kind = ExprKind::Name;
    else if (is("coname")) kind = ExprKind::Coname;
    else if (is("dual")) kind = ExprKind::Dual;
    else if (is("tr")) kind = ExprKind::Trace;
    else
      fail({"name", "'('", "'id'", "'eta'", "'eps'", "'sym'", "'dagger'", "'name'", "'coname'",
            "'dual'", "'tr'"});
    take();
    Expr e;
    e.kind = kind;
    if (kind == ExprKind::Trace && is("[")) {
      take();
      e.words.push_back(word());
      expect("]");
    }
    expect("(");
    e.kids.push_back(expr());
    e.span = join(head.span, expect(")").span);
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SourceFile parse_source(const std::string& text) { return Parser(lex(text)).file(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

std::string print_at(const Expr& e, int level, PrintOrder order) {
  auto wrap = [&](int own, std::string s) { return level > own ? "(" + s + ")" : s; };
  switch (e.kind) {
    case ExprKind::Ref:
      return e.name;
    case ExprKind::Id:
      return "id[" + e.words[0].source_str() + "]";
    case ExprKind::Eta:
      return "eta[" + e.words[0].source_str() + "]";
    case ExprKind::Eps:
      return "eps[" + e.words[0].source_str() + "]";
    case ExprKind::Sym:
      return "sym[" + e.words[0].source_str() + ", " + e.words[1].source_str() + "]";
    case ExprKind::Then:
      if (order == PrintOrder::Applicative)
        return wrap(0, print_at(e.kids[1], 1, order) + " . " + print_at(e.kids[0], 0, order));
      return wrap(0, print_at(e.kids[0], 0, order) + " ; " + print_at(e.kids[1], 1, order));
    case ExprKind::Tensor:
      return wrap(1, print_at(e.kids[0], 1, order) + " * " + print_at(e.kids[1], 2, order));
    case ExprKind::Dagger:
      return "dagger(" + print_at(e.kids[0], 0, order) + ")";
    case ExprKind::Name:
      return "name(" + print_at(e.kids[0], 0, order) + ")";
    case ExprKind::Coname:
      return "coname(" + print_at(e.kids[0], 0, order) + ")";
    case ExprKind::Dual:
      return "dual(" + print_at(e.kids[0], 0, order) + ")";
    case ExprKind::Trace:
      return (e.words.empty() ? "tr(" : "tr[" + e.words[0].source_str() + "](") +
             print_at(e.kids[0], 0, order) + ")";
  }
  return {};
}

}  // namespace

std::string print_expr(const Expr& e, PrintOrder order) { return print_at(e, 0, order); }

std::string print_source(const SourceFile& f) {
  std::string out;
  for (const auto& d : f.decls) {
    switch (d.kind) {
      case DeclKind::Object: {
        out += "object ";
        for (std::size_t i = 0; i < d.names.size(); ++i) out += (i ? ", " : "") + d.names[i];
        break;
      }
      case DeclKind::Dagger:
        out += "dagger";
        break;
      case DeclKind::Gen:
        out += "gen " + d.names[0] + " : " + d.dom.source_str() + " -> " + d.cod.source_str();
        break;
      case DeclKind::Term:
        out += "term " + d.names[0] + " = " + print_expr(d.exprs[0]);
        break;
      case DeclKind::Eq:
        out += "eq " + d.names[0] + " : " + print_expr(d.exprs[0]) + " = " + print_expr(d.exprs[1]);
        break;
    }
    out += ";\n";
  }
  return out;
}

Expr term_expr(const Term& t) {
  Expr e;
  switch (t.kind()) {
    case TermKind::Gen:
      e.kind = ExprKind::Ref;
      e.name = t.name();
      break;
    case TermKind::Id:
      e.kind = ExprKind::Id;
      e.words = {t.object()};
      break;
    case TermKind::Sym:
      e.kind = ExprKind::Sym;
      e.words = {t.object(), t.object2()};
      break;
    case TermKind::Unit:
      e.kind = ExprKind::Eta;
      e.words = {t.object()};
      break;
    case TermKind::Counit:
      e.kind = ExprKind::Eps;
      e.words = {t.object()};
      break;
    case TermKind::Dagger:
      e.kind = ExprKind::Dagger;
      e.kids = {term_expr(t.child(0))};
      break;
    case TermKind::Compose:
      e.kind = ExprKind::Then;
      e.kids = {term_expr(t.child(1)), term_expr(t.child(0))};
      break;
    case TermKind::Tensor:
      e.kind = ExprKind::Tensor;
      e.kids = {term_expr(t.child(0)), term_expr(t.child(1))};
      break;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Elaboration

const TypedTerm* Program::term(const std::string& name) const {
  for (const auto& [n, t] : terms)
    if (n == name) return &t;
  return nullptr;
}

const Equation* Program::equation(const std::string& name) const {
  for (const auto& e : equations)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

class Elaborator {
 public:
  explicit Elaborator(Program& p) : p_(p) {}

  void decl(const Decl& d) {
    switch (d.kind) {
      case DeclKind::Object:
        for (std::size_t i = 0; i < d.names.size(); ++i) {
          fresh(d.names[i], d.name_spans[i]);
          p_.signature.add_object(d.names[i]);
          p_.spans[d.names[i]] = d.name_spans[i];
        }
        break;
      case DeclKind::Dagger:
        p_.signature.set_dagger_closed(true);
        break;
      case DeclKind::Gen:
        fresh(d.names[0], d.name_spans[0]);
        word(d.dom, d.span);
        word(d.cod, d.span);
        p_.signature.add_generator({d.names[0], d.dom, d.cod});
        p_.spans[d.names[0]] = d.name_spans[0];
        break;
      case DeclKind::Term: {
        fresh(d.names[0], d.name_spans[0]);
        TypedTerm t = expr(d.exprs[0]);
        p_.terms.push_back({d.names[0], std::move(t)});
        p_.spans[d.names[0]] = d.name_spans[0];
        break;
      }
      case DeclKind::Eq: {
        if (p_.equation(d.names[0]))
          throw Error(ErrorCode::ResolveError, "equation '" + d.names[0] + "' is already declared",
                      d.name_spans[0]);
        TypedTerm l = expr(d.exprs[0]), r = expr(d.exprs[1]);
        if (l.dom != r.dom || l.cod != r.cod)
          throw Error(ErrorCode::TypeMismatch,
                      "sides of '" + d.names[0] + "' differ: " + l.dom.str() + " -> " +
                          l.cod.str() + " vs " + r.dom.str() + " -> " + r.cod.str(),
                      d.exprs[1].span);
        p_.equations.push_back(make_equation(d.names[0], std::move(l), std::move(r)));
        break;
      }
    }
  }

  TypedTerm expr(const Expr& e) {
    try {
      return build(e);
    } catch (const Error& err) {
      if (err.span().valid()) throw;
      throw Error(err.code(), err.what(), e.span);
    }
  }

 private:
  void fresh(const std::string& name, const SourceSpan& span) {
    if (p_.signature.has_object(name) || p_.signature.find_generator(name) || p_.term(name))
      throw Error(ErrorCode::ResolveError, "'" + name + "' is already declared", span);
  }

  void word(const ObjectExpr& w, const SourceSpan& span) {
    for (const auto& f : w.factors())
      if (!p_.signature.has_object(f.base))
        throw Error(ErrorCode::ResolveError, "unknown object '" + f.base + "'", span,
                    {"declared object"});
  }

  TypedTerm build(const Expr& e) {
    for (const auto& w : e.words) word(w, e.span);
    switch (e.kind) {
      case ExprKind::Ref: {
        if (const Generator* g = p_.signature.find_generator(e.name)) return generator_term(*g);
        if (const TypedTerm* t = p_.term(e.name)) return *t;
        throw Error(ErrorCode::ResolveError, "unknown generator or term '" + e.name + "'", e.span,
                    {"declared generator", "declared term"});
      }
      case ExprKind::Id:
        return identity(e.words[0]);
      case ExprKind::Eta:
        return unit_term(e.words[0]);
      case ExprKind::Eps:
        return counit_term(e.words[0]);
      case ExprKind::Sym:
        return symmetry(e.words[0], e.words[1]);
      case ExprKind::Then: {
        TypedTerm a = expr(e.kids[0]), b = expr(e.kids[1]);
        if (a.cod != b.dom)
          throw Error(ErrorCode::CompositionMismatch,
                      "cannot compose: left side ends at " + a.cod.str() + " but '" +
                          print_expr(e.kids[1]) + "' starts at " + b.dom.str(),
                      e.kids[1].span);
        return then(a, b);
      }
      case ExprKind::Tensor:
        return tensor(expr(e.kids[0]), expr(e.kids[1]));
      case ExprKind::Dagger:
        if (!p_.signature.dagger_closed())
          throw Error(ErrorCode::DaggerUnavailable,
                      "dagger needs a 'dagger;' declaration in the signature", e.span);
        return dagger(expr(e.kids[0]));
      case ExprKind::Name:
        return name_of(expr(e.kids[0]));
      case ExprKind::Coname:
        return coname_of(expr(e.kids[0]));
      case ExprKind::Dual:
        return dual_of(expr(e.kids[0]));
      case ExprKind::Trace: {
        TypedTerm f = expr(e.kids[0]);
        return e.words.empty() ? trace_term(f) : trace_term(f, e.words[0]);
      }
    }
    throw Error(ErrorCode::ParseError, "unknown expression", e.span);
  }

  Program& p_;
};

}  // namespace

Program elaborate(const SourceFile& f) {
  Program p;
  Elaborator el(p);
  for (const auto& d : f.decls) el.decl(d);
  return p;
}

Program load_program(const std::string& text) { return elaborate(parse_source(text)); }

Program load_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Usage, "cannot read source file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_program(buf.str());
  } catch (const Error& e) {
    throw e.prefixed(path + ":");
  }
}

TypedTerm elaborate_expr(const std::string& text, const Program& p) {
  Program copy = p;
  Elaborator el(copy);
  return el.expr(Parser(lex(text)).standalone());
}

}  // namespace ccat
