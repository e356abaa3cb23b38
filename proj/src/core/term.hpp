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

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "object.hpp"

namespace ccat {

struct Generator {
  std::string name;
  ObjectExpr dom;
  ObjectExpr cod;
};

/// Base objects and generators of a free (dagger) compact closed category.
class Signature {
 public:
  void add_object(const std::string& name);
  void add_generator(Generator g);
  void set_dagger_closed(bool on) { dagger_closed_ = on; }

  bool has_object(const std::string& name) const;
  const Generator* find_generator(const std::string& name) const;
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Generator>& generators() const { return generators_; }
  bool dagger_closed() const { return dagger_closed_; }

  /// Throws UnknownName if the word mentions an undeclared base object.
  void check_word(const ObjectExpr& w) const;

 private:
  std::vector<std::string> objects_;
  std::vector<Generator> generators_;
  bool dagger_closed_ = false;
};

enum class TermKind { Gen, Id, Compose, Tensor, Sym, Unit, Counit, Dagger };

/// Immutable morphism expression. Compose stores (after, before) as children 0 and 1.
class Term {
 public:
  static Term gen(std::string name);
  static Term id(ObjectExpr a);
  static Term compose(Term after, Term before);
  static Term tensor(Term left, Term right);
  static Term sym(ObjectExpr a, ObjectExpr b);
  static Term unit(ObjectExpr a);
  static Term counit(ObjectExpr a);
  static Term dagger(Term t);

  TermKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const ObjectExpr& object() const { return node_->a; }
  const ObjectExpr& object2() const { return node_->b; }
  std::size_t arity() const { return node_->children.size(); }
  const Term& child(std::size_t i) const { return node_->children[i]; }

  std::size_t size() const;
  /// Diagrammatic-order rendering in the source language syntax.
  std::string str() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    TermKind kind;
    std::string name;
    ObjectExpr a, b;
    std::vector<Term> children;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TypedTerm {
  Term term;
  ObjectExpr dom;
  ObjectExpr cod;
};

TypedTerm typecheck(const Term& t, const Signature& sig);

// Typed smart constructors. compose checks cod(before) == dom(after).
TypedTerm generator_term(const Generator& g);
TypedTerm identity(const ObjectExpr& a);
TypedTerm compose(const TypedTerm& after, const TypedTerm& before);
TypedTerm then(const TypedTerm& first, const TypedTerm& second);
TypedTerm tensor(const TypedTerm& left, const TypedTerm& right);
TypedTerm symmetry(const ObjectExpr& a, const ObjectExpr& b);
TypedTerm unit_term(const ObjectExpr& a);
TypedTerm counit_term(const ObjectExpr& a);
TypedTerm dagger(const TypedTerm& t);

/// (1_{A*} (x) f) . eta_A : I -> A* (x) B
TypedTerm name_of(const TypedTerm& f);
/// eps_B . (f (x) 1_{B*}) : A (x) B* -> I
TypedTerm coname_of(const TypedTerm& f);
/// (1_{A*} (x) eps_B) . (1_{A*} (x) f (x) 1_{B*}) . (eta_A (x) 1_{B*}) : B* -> A*
TypedTerm dual_of(const TypedTerm& f);
/// Partial trace over the trailing word U of f : A (x) U -> B (x) U.
TypedTerm trace_term(const TypedTerm& f, const ObjectExpr& traced);
/// Total trace of an endomorphism.
TypedTerm trace_term(const TypedTerm& f);

/// Bijection on {1..n} in one-line notation; images()[i-1] is the image of i.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  const std::vector<int>& images() const { return images_; }
  int operator()(int i) const { return images_[i - 1]; }

  /// Right-to-left composition: (p * q)(i) = p(q(i)).
  Permutation operator*(const Permutation& q) const;
  Permutation inverse() const;
  std::string str() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// Composite of adjacent symmetries sending factor i to position p(i).
TypedTerm perm_term(const Permutation& p, const std::vector<ObjectExpr>& factors);

}  // namespace ccat
