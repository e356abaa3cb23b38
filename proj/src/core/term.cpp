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

#include "term.hpp"

#include <algorithm>
#include <numeric>

namespace ccat {

void Signature::add_object(const std::string& name) {
  if (has_object(name))
    throw Error(ErrorCode::ResolveError, "object '" + name + "' declared twice");
  objects_.push_back(name);
}

void Signature::add_generator(Generator g) {
  if (find_generator(g.name))
    throw Error(ErrorCode::ResolveError, "generator '" + g.name + "' declared twice");
  check_word(g.dom);
  check_word(g.cod);
  generators_.push_back(std::move(g));
}

bool Signature::has_object(const std::string& name) const {
  return std::find(objects_.begin(), objects_.end(), name) != objects_.end();
}

const Generator* Signature::find_generator(const std::string& name) const {
  for (const auto& g : generators_)
    if (g.name == name) return &g;
  return nullptr;
}

void Signature::check_word(const ObjectExpr& w) const {
  for (const auto& f : w.factors())
    if (!has_object(f.base))
      throw Error(ErrorCode::UnknownName, "unknown object '" + f.base + "'");
}

namespace {

template <typename... Ts>
std::vector<Term> kids(Ts... ts) {
  return {std::move(ts)...};
}

}  // namespace

Term Term::gen(std::string name) {
  return Term(std::make_shared<const Node>(Node{TermKind::Gen, std::move(name), {}, {}, {}}));
}
Term Term::id(ObjectExpr a) {
  return Term(std::make_shared<const Node>(Node{TermKind::Id, {}, std::move(a), {}, {}}));
}
Term Term::compose(Term after, Term before) {
  return Term(std::make_shared<const Node>(
      Node{TermKind::Compose, {}, {}, {}, kids(std::move(after), std::move(before))}));
}
Term Term::tensor(Term left, Term right) {
  return Term(std::make_shared<const Node>(
      Node{TermKind::Tensor, {}, {}, {}, kids(std::move(left), std::move(right))}));
}
Term Term::sym(ObjectExpr a, ObjectExpr b) {
  return Term(std::make_shared<const Node>(
      Node{TermKind::Sym, {}, std::move(a), std::move(b), {}}));
}
Term Term::unit(ObjectExpr a) {
  return Term(std::make_shared<const Node>(Node{TermKind::Unit, {}, std::move(a), {}, {}}));
}
Term Term::counit(ObjectExpr a) {
  return Term(std::make_shared<const Node>(Node{TermKind::Counit, {}, std::move(a), {}, {}}));
}
Term Term::dagger(Term t) {
  return Term(std::make_shared<const Node>(Node{TermKind::Dagger, {}, {}, {}, kids(std::move(t))}));
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

std::string Term::str() const {
  switch (kind()) {
    case TermKind::Gen:
      return name();
    case TermKind::Id:
      return "id[" + object().source_str() + "]";
    case TermKind::Sym:
      return "sym[" + object().source_str() + ", " + object2().source_str() + "]";
    case TermKind::Unit:
      return "eta[" + object().source_str() + "]";
    case TermKind::Counit:
      return "eps[" + object().source_str() + "]";
    case TermKind::Dagger:
      return "dagger(" + child(0).str() + ")";
    case TermKind::Compose:
      return "(" + child(1).str() + " ; " + child(0).str() + ")";
    case TermKind::Tensor:
      return "(" + child(0).str() + " * " + child(1).str() + ")";
  }
  return {};
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name() || a.object() != b.object() ||
      a.object2() != b.object2() || a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.child(i) == b.child(i))) return false;
  return true;
}

namespace {

std::string path_str(const TermPath& path) {
  std::string s = "[";
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "," : "") + std::to_string(path[i]);
  return s + "]";
}

TypedTerm check_rec(const Term& t, const Signature& sig, TermPath& path) {
  auto word = [&](const ObjectExpr& w) {
    try {
      sig.check_word(w);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), path);
    }
  };
  auto child = [&](int i) {
    path.push_back(i);
    TypedTerm r = check_rec(t.child(i), sig, path);
    path.pop_back();
    return r;
  };
  switch (t.kind()) {
    case TermKind::Gen: {
      const Generator* g = sig.find_generator(t.name());
      if (!g) throw Error(ErrorCode::UnknownName, "unknown generator '" + t.name() + "'", path);
      return {t, g->dom, g->cod};
    }
    case TermKind::Id:
      word(t.object());
      return {t, t.object(), t.object()};
    case TermKind::Sym:
      word(t.object());
      word(t.object2());
      return {t, t.object() * t.object2(), t.object2() * t.object()};
    case TermKind::Unit:
      word(t.object());
      return {t, ObjectExpr::unit(), dual_object(t.object()) * t.object()};
    case TermKind::Counit:
      word(t.object());
      return {t, t.object() * dual_object(t.object()), ObjectExpr::unit()};
    case TermKind::Dagger: {
      if (!sig.dagger_closed())
        throw Error(ErrorCode::DaggerUnavailable, "signature is not dagger-closed", path);
      TypedTerm inner = child(0);
      return {t, inner.cod, inner.dom};
    }
    case TermKind::Compose: {
      TypedTerm after = child(0);
      TypedTerm before = child(1);
      if (before.cod != after.dom)
        throw Error(ErrorCode::CompositionMismatch,
                    "cannot compose: codomain " + before.cod.str() + " does not match domain " +
                        after.dom.str() + " at " + path_str(path),
                    path);
      return {t, before.dom, after.cod};
    }
    case TermKind::Tensor: {
      TypedTerm l = child(0);
      TypedTerm r = child(1);
      return {t, l.dom * r.dom, l.cod * r.cod};
    }
  }
  throw Error(ErrorCode::TypeMismatch, "malformed term", path);
}

}  // namespace

TypedTerm typecheck(const Term& t, const Signature& sig) {
  TermPath path;
  return check_rec(t, sig, path);
}

TypedTerm generator_term(const Generator& g) { return {Term::gen(g.name), g.dom, g.cod}; }

TypedTerm identity(const ObjectExpr& a) { return {Term::id(a), a, a}; }

TypedTerm compose(const TypedTerm& after, const TypedTerm& before) {
  if (before.cod != after.dom)
    throw Error(ErrorCode::CompositionMismatch, "cannot compose: codomain " + before.cod.str() +
                                                    " does not match domain " + after.dom.str());
  return {Term::compose(after.term, before.term), before.dom, after.cod};
}

TypedTerm then(const TypedTerm& first, const TypedTerm& second) { return compose(second, first); }

TypedTerm tensor(const TypedTerm& left, const TypedTerm& right) {
  return {Term::tensor(left.term, right.term), left.dom * right.dom, left.cod * right.cod};
}

TypedTerm symmetry(const ObjectExpr& a, const ObjectExpr& b) {
  return {Term::sym(a, b), a * b, b * a};
}

TypedTerm unit_term(const ObjectExpr& a) {
  return {Term::unit(a), ObjectExpr::unit(), dual_object(a) * a};
}

TypedTerm counit_term(const ObjectExpr& a) {
  return {Term::counit(a), a * dual_object(a), ObjectExpr::unit()};
}

TypedTerm dagger(const TypedTerm& t) { return {Term::dagger(t.term), t.cod, t.dom}; }

TypedTerm name_of(const TypedTerm& f) {
  return compose(tensor(identity(dual_object(f.dom)), f), unit_term(f.dom));
}

TypedTerm coname_of(const TypedTerm& f) {
  return compose(counit_term(f.cod), tensor(f, identity(dual_object(f.cod))));
}

TypedTerm dual_of(const TypedTerm& f) {
  const ObjectExpr a_dual = dual_object(f.dom);
  const ObjectExpr b_dual = dual_object(f.cod);
  TypedTerm open = tensor(unit_term(f.dom), identity(b_dual));
  TypedTerm middle = tensor(tensor(identity(a_dual), f), identity(b_dual));
  TypedTerm close = tensor(identity(a_dual), counit_term(f.cod));
  return compose(close, compose(middle, open));
}

TypedTerm trace_term(const TypedTerm& f, const ObjectExpr& traced) {
  if (!f.dom.ends_with(traced) || !f.cod.ends_with(traced))
    throw Error(ErrorCode::TraceShapeMismatch, "cannot trace out " + traced.str() + " from " +
                                                   f.dom.str() + " -> " + f.cod.str());
  const ObjectExpr a = f.dom.slice(0, f.dom.size() - traced.size());
  const ObjectExpr b = f.cod.slice(0, f.cod.size() - traced.size());
  const ObjectExpr u_dual = dual_object(traced);
  TypedTerm open = tensor(identity(a), unit_term(traced));
  TypedTerm twist = tensor(identity(a), symmetry(u_dual, traced));
  TypedTerm body = tensor(f, identity(u_dual));
  TypedTerm close = tensor(identity(b), counit_term(traced));
  return compose(close, compose(body, compose(twist, open)));
}

TypedTerm trace_term(const TypedTerm& f) {
  if (f.dom != f.cod)
    throw Error(ErrorCode::TraceShapeMismatch,
                "total trace needs an endomorphism, got " + f.dom.str() + " -> " + f.cod.str());
  return trace_term(f, f.dom);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 1 || v > static_cast<int>(images_.size()) || seen[v - 1])
      throw Error(ErrorCode::NotAPermutation, "not a permutation: " + str());
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::operator*(const Permutation& q) const {
  if (q.size() != size())
    throw Error(ErrorCode::NotAPermutation, "composing permutations of different sizes");
  std::vector<int> im(size());
  for (std::size_t i = 0; i < size(); ++i) im[i] = images_[q.images_[i] - 1];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(size());
  for (std::size_t i = 0; i < size(); ++i) im[images_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(im));
}

std::string Permutation::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < images_.size(); ++i) s += (i ? " " : "") + std::to_string(images_[i]);
  return s + ")";
}

TypedTerm perm_term(const Permutation& p, const std::vector<ObjectExpr>& factors) {
  if (p.size() != factors.size())
    throw Error(ErrorCode::NotAPermutation, "permutation " + p.str() + " acts on " +
                                                std::to_string(p.size()) + " factors, got " +
                                                std::to_string(factors.size()));
  // slot j currently holds original factor order[j]; bubble toward target positions.
  std::vector<int> order(factors.size());
  std::iota(order.begin(), order.end(), 0);
  ObjectExpr whole;
  for (const auto& f : factors) whole = whole * f;
  std::optional<TypedTerm> acc;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t j = 0; j + 1 < order.size(); ++j) {
      if (p(order[j] + 1) <= p(order[j + 1] + 1)) continue;
      std::optional<TypedTerm> layer;
      auto push = [&](const TypedTerm& t) { layer = layer ? tensor(*layer, t) : t; };
      for (std::size_t k = 0; k < j; ++k) push(identity(factors[order[k]]));
      push(symmetry(factors[order[j]], factors[order[j + 1]]));
      for (std::size_t k = j + 2; k < order.size(); ++k) push(identity(factors[order[k]]));
      acc = acc ? compose(*layer, *acc) : *layer;
      std::swap(order[j], order[j + 1]);
      swapped = true;
    }
  }
  return acc ? *acc : identity(whole);
}

}  // namespace ccat
