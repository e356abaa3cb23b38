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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "model.hpp"
#include "report.hpp"

namespace ccat {

enum class FamilyKind { Diagonal, Deleting, ProjectionLeft, ProjectionRight };

const char* family_kind_name(FamilyKind kind);
/// Accepts "diagonal", "deleting", "projection-left" and "projection-right".
FamilyKind parse_family_kind(const std::string& text);

/// A candidate natural family in a model.
///
/// Components are stored per object word (keyed by ObjectExpr::str()). Missing
/// components of composite words are derived from the base components through
/// the monoidal structure maps: Delta on A (x) B interleaves Delta_A (x) Delta_B,
/// deletion on A (x) B is d_A (x) d_B, and both are [1] on the unit. A dual
/// factor falls back to the component of its base object.
///
/// Projection families store the discarding effect d_X of every object; the
/// left projection A (x) B -> A is 1_A (x) d_B and the right one is d_A (x) 1_B.
struct NaturalFamily {
  std::string name;
  FamilyKind kind = FamilyKind::Diagonal;
  std::map<std::string, Matrix> components;

  /// Component at w: Delta_w : w -> w (x) w, or d_w : w -> I.
  Matrix component(const Model& m, const ObjectExpr& w) const;
  /// For projection kinds: the projection out of a (x) b.
  Matrix projection(const Model& m, const ObjectExpr& a, const ObjectExpr& b) const;
};

/// Throws DimensionMismatch if a stored component has the wrong shape.
void validate_family(const Model& m, const NaturalFamily& fam);

/// A morphism tried by the naturality checks.
struct Candidate {
  std::string description;
  ObjectExpr dom;
  ObjectExpr cod;
  Matrix matrix;
};

/// Morphisms to test naturality against, in a fixed order: generators, then
/// for every base object the all-ones state, the basis states and the zero
/// state, then (for finite scalars) every morphism between small base
/// objects, then seeded random composites, states and endomorphisms.
std::vector<Candidate> naturality_candidates(const Model& m, std::size_t budget,
                                             std::uint64_t seed = 1);

/// Both legs of the naturality square of `fam` at `f`; nullopt when they agree.
std::optional<Witness> naturality_failure(const Model& m, const NaturalFamily& fam,
                                          const Candidate& f);

struct SearchResult {
  std::optional<Witness> witness;
  std::size_t trials = 0;
};

/// First candidate violating naturality within `budget` trials.
SearchResult find_naturality_counterexample(const Model& m, const NaturalFamily& fam,
                                            std::size_t budget, std::uint64_t seed = 1);

CheckReport check_cloning_axioms(const Model& m, const NaturalFamily& delta, std::size_t samples);
CheckReport delta_unit_lemma_check(const Model& m, const NaturalFamily& delta);

/// eta_A (x) eta_A = (3 2 1 4) . (eta_A (x) eta_A) on A* (x) A (x) A* (x) A.
Equation cap_swap_equation(const ObjectExpr& a);

/// Faces of the parallel/nested caps proof for a state u : I -> w with w of
/// two factors, then the conclusion u (x) u = (3 2 1 4) . (u (x) u).
CheckReport verify_cap_swap_proof(const Model& m, const NaturalFamily& delta, const Matrix& u,
                                  const ObjectExpr& w);

struct DerivationStep {
  std::string label;
  int chain = 0;
  Diagram before;
  Equation equation;
  Match site;
  Diagram after;
  CanonicalKey before_key;
  CanonicalKey after_key;
};

struct DerivationReport {
  std::string title;
  Signature signature;
  std::vector<DerivationStep> steps;
  std::vector<Equation> derived;
  CheckReport conclusions;

  bool passed() const { return conclusions.passed(); }
};

/// Re-applies every step and checks the recorded keys and chaining.
CheckReport replay_derivation(const DerivationReport& r);

/// Collapse of the free compact closed category on one object once parallel
/// caps equal nested caps: the twist becomes the identity, and then every
/// endomorphism f equals Tr(f) times the identity.
DerivationReport derive_collapse(const std::string& base);

/// f = Tr(f) . 1 and Tr(s . 1) = s for every sampled scalar. Throws
/// PreconditionUnmet naming the failed axiom if delta is not a cloning.
CheckReport cloning_collapse_check(const Model& m, const NaturalFamily& delta, const Matrix& f,
                                   std::size_t samples = 20);

/// s . s = s for sampled scalars, via the naturality square at I and directly.
CheckReport idempotent_scalars_check(const Model& m, const NaturalFamily& delta,
                                     std::size_t samples = 6);

/// The two diagrams of the product criterion plus naturality of all three families.
CheckReport product_structure_check(const Model& m, const NaturalFamily& delta,
                                    const NaturalFamily& p, const NaturalFamily& q,
                                    std::size_t budget = 64);

/// Deleting collapse in the free category: equates the conames of two
/// parallel generators through a monoidal natural deleting family, then the
/// generators themselves. Throws PreconditionUnmet without two parallel generators.
DerivationReport deleting_collapse_check(const Signature& sig);

/// Meet tables of all lattices with n elements up to isomorphism; element 0
/// is the bottom and n-1 the top.
std::vector<std::vector<std::vector<int>>> enumerate_lattices(int n);

/// Semilattice model on one object A with the identity scalar as diagonal.
Model semilattice_model(const std::vector<std::vector<int>>& meet);
NaturalFamily unit_diagonal(const Model& m);

}  // namespace ccat
