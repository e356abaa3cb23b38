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

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "term.hpp"

namespace ccat {

enum class Bend : unsigned char { Cup, Cap };

/// One step of a closed generator chain: the node is entered through port
/// `enter` and left through port `exit`.
struct LoopLetter {
  std::string gen;
  bool dagger = false;
  int enter = 0;
  int exit = 0;
  auto operator<=>(const LoopLetter&) const = default;
};

/// A closed loop. Free loops have an empty word and carry their base object;
/// generator chains are stored in lexicographically minimal rotation.
struct LoopLabel {
  std::vector<LoopLetter> word;
  std::string base;

  std::string str() const;
  auto operator<=>(const LoopLabel&) const = default;
};

/// Canonical byte string; equal keys iff the anchored diagrams are isomorphic.
struct CanonicalKey {
  std::string bytes;
  bool operator==(const CanonicalKey&) const = default;
};

/// Open port graph of a morphism in the free compact closed category.
///
/// Ports are numbered: boundary inputs first, then boundary outputs, then the
/// ports of each node (dom ports before cod ports). Every port belongs to
/// exactly one wire; `partner(p)` is the other end.
class Diagram {
 public:
  struct Port {
    Factor type;
    int node = -1;  // -1 for boundary ports
    int index = 0;  // position on its boundary side or within its node
    bool upper = true;  // boundary input / node dom side
  };
  struct Node {
    std::string gen;
    bool dagger = false;
    int first_port = 0;
    int n_dom = 0;
    int n_cod = 0;
    int port(int i) const { return first_port + i; }
    int num_ports() const { return n_dom + n_cod; }
  };

  Diagram() = default;

  static Diagram identity(const ObjectExpr& a);
  static Diagram symmetry(const ObjectExpr& a, const ObjectExpr& b);
  static Diagram cup(const ObjectExpr& a);
  static Diagram cap(const ObjectExpr& a);
  static Diagram box(const Generator& g);

  /// Sequential composition: `this` first, then `next`.
  Diagram then(const Diagram& next) const;
  Diagram tensor(const Diagram& rhs) const;
  /// Vertical mirror image; toggles the dagger mark on every node.
  Diagram flipped() const;

  const ObjectExpr& dom() const { return dom_; }
  const ObjectExpr& cod() const { return cod_; }
  int num_inputs() const { return static_cast<int>(dom_.size()); }
  int num_outputs() const { return static_cast<int>(cod_.size()); }
  int input_port(int i) const { return i; }
  int output_port(int j) const { return num_inputs() + j; }
  int num_ports() const { return static_cast<int>(ports_.size()); }
  const Port& port(int p) const { return ports_[p]; }
  int partner(int p) const { return partner_[p]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<LoopLabel>& loops() const { return loops_; }
  /// Cups and caps met when walking the wire from `p` toward its partner.
  const std::vector<Bend>& bends(int p) const { return bends_[p]; }

  /// True if the A-flow of the wire at p leaves p (A flows down, A* up).
  bool is_source(int p) const;
  /// Wire ids are the source port of each wire, in increasing order.
  std::vector<int> wires() const;

  /// Throws if the port matching, labels or flow directions are inconsistent.
  void validate() const;

 private:
  friend struct DiagramAccess;
  ObjectExpr dom_, cod_;
  std::vector<Port> ports_;
  std::vector<int> partner_;
  std::vector<Node> nodes_;
  std::vector<LoopLabel> loops_;
  std::vector<std::vector<Bend>> bends_;
};

Diagram to_diagram(const TypedTerm& t, const Signature& sig);
Diagram to_diagram(const Term& t, const Signature& sig);

CanonicalKey canonical_key(const Diagram& d);

/// Decides equality in the free compact closed category over `sig`.
bool equal_diagrams(const TypedTerm& a, const TypedTerm& b, const Signature& sig);

struct Equation {
  std::string name;
  TypedTerm lhs;
  TypedTerm rhs;

  Equation reversed() const { return {name + "^-1", rhs, lhs}; }
};

Equation make_equation(std::string name, TypedTerm lhs, TypedTerm rhs);

/// An embedding of a pattern diagram into a host.
///
/// `nodes[i]` is the host node for pattern node i; `cuts[i]` is the host wire
/// (by source port) cut open to host the i-th boundary-to-boundary wire of the
/// pattern; `loops[i]` is the host loop matched by pattern loop i.
struct Match {
  std::vector<int> nodes;
  std::vector<int> cuts;
  std::vector<int> loops;

  std::string str() const;
  bool operator==(const Match&) const = default;
};

std::vector<Match> enumerate_matches(const Diagram& host, const Diagram& pattern,
                                     std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Replaces the image of `lhs` at `site` by `rhs`, reconnecting boundary wires
/// positionally. Throws NoSuchMatch if `site` is not an embedding of `lhs`.
Diagram rewrite(const Diagram& host, const Diagram& lhs, const Diagram& rhs, const Match& site);
Diagram apply_equation(const Diagram& host, const Equation& eq, const Signature& sig,
                       const Match& site);

/// Graphviz dot text. Nodes are named `in<k>`, `out<k>`, `n<k>`, `cup<k>`,
/// `cap<k>` and `loop<k>`.
std::string render_dot(const Diagram& d);

}  // namespace ccat
