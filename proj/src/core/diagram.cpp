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

#include "diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ccat {

struct DiagramAccess {
  static Diagram make(const ObjectExpr& dom, const ObjectExpr& cod) {
    Diagram d;
    d.dom_ = dom;
    d.cod_ = cod;
    for (std::size_t i = 0; i < dom.size(); ++i)
      d.ports_.push_back({dom[i], -1, static_cast<int>(i), true});
    for (std::size_t j = 0; j < cod.size(); ++j)
      d.ports_.push_back({cod[j], -1, static_cast<int>(j), false});
    d.partner_.assign(d.ports_.size(), -1);
    d.bends_.assign(d.ports_.size(), {});
    return d;
  }

  static int add_node(Diagram& d, const std::string& gen, bool dagger,
                      const std::vector<Factor>& dom, const std::vector<Factor>& cod) {
    Diagram::Node n{gen, dagger, static_cast<int>(d.ports_.size()), static_cast<int>(dom.size()),
                    static_cast<int>(cod.size())};
    const int id = static_cast<int>(d.nodes_.size());
    for (std::size_t i = 0; i < dom.size(); ++i)
      d.ports_.push_back({dom[i], id, static_cast<int>(i), true});
    for (std::size_t j = 0; j < cod.size(); ++j)
      d.ports_.push_back({cod[j], id, static_cast<int>(dom.size() + j), false});
    d.partner_.resize(d.ports_.size(), -1);
    d.bends_.resize(d.ports_.size());
    d.nodes_.push_back(std::move(n));
    return id;
  }

  static std::vector<Factor> node_types(const Diagram& d, const Diagram::Node& n, bool upper) {
    std::vector<Factor> out;
    const int from = upper ? 0 : n.n_dom;
    const int count = upper ? n.n_dom : n.n_cod;
    for (int i = 0; i < count; ++i) out.push_back(d.ports_[n.port(from + i)].type);
    return out;
  }

  static void connect(Diagram& d, int p, int q, std::vector<Bend> bends = {}) {
    d.partner_[p] = q;
    d.partner_[q] = p;
    d.bends_[q] = std::vector<Bend>(bends.rbegin(), bends.rend());
    d.bends_[p] = std::move(bends);
  }

  static std::vector<LoopLabel>& loops(Diagram& d) { return d.loops_; }
};

namespace {

using DA = DiagramAccess;

/// Joins real ports through degree-2 virtual points, producing wires and loops.
class Glue {
 public:
  explicit Glue(int kept) : kept_(kept), adj_(kept) {}

  int add_virtual(const Factor& type) {
    virt_.push_back(type);
    adj_.emplace_back();
    return kept_ + static_cast<int>(virt_.size()) - 1;
  }
  int virt(std::size_t i) const { return kept_ + static_cast<int>(i); }

  void connect(int u, int v, std::vector<Bend> bends) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({u, v, std::move(bends)});
    adj_[u].push_back(id);
    adj_[v].push_back(id);
  }

  void resolve(Diagram& out) {
    std::vector<bool> seen_edge(edges_.size(), false);
    for (int p = 0; p < kept_; ++p) {
      if (out.partner(p) >= 0) continue;
      if (adj_[p].size() != 1) throw std::logic_error("glue: dangling port");
      std::vector<Bend> path;
      int cur = p;
      int e = adj_[p][0];
      while (true) {
        seen_edge[e] = true;
        const Edge& ed = edges_[e];
        const int next = ed.u == cur ? ed.v : ed.u;
        if (ed.u == cur)
          path.insert(path.end(), ed.bends.begin(), ed.bends.end());
        else
          path.insert(path.end(), ed.bends.rbegin(), ed.bends.rend());
        cur = next;
        if (cur < kept_) break;
        const auto& a = adj_[cur];
        if (a.size() != 2) throw std::logic_error("glue: virtual point of wrong degree");
        e = a[0] == e ? a[1] : a[0];
      }
      DA::connect(out, p, cur, std::move(path));
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (seen_edge[e]) continue;
      // closed cycle through virtual points only
      int cur = edges_[e].u;
      int edge = static_cast<int>(e);
      const Factor type = virt_[cur - kept_];
      while (!seen_edge[edge]) {
        seen_edge[edge] = true;
        const Edge& ed = edges_[edge];
        cur = ed.u == cur ? ed.v : ed.u;
        const auto& a = adj_[cur];
        edge = a[0] == edge ? a[1] : a[0];
      }
      DA::loops(out).push_back({{}, type.base});
    }
  }

 private:
  struct Edge {
    int u, v;
    std::vector<Bend> bends;
  };
  int kept_;
  std::vector<Factor> virt_;
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

std::vector<Bend> swap_bends(const std::vector<Bend>& b) {
  std::vector<Bend> out;
  for (Bend x : b) out.push_back(x == Bend::Cup ? Bend::Cap : Bend::Cup);
  return out;
}

}  // namespace

std::string LoopLabel::str() const {
  if (word.empty()) return "loop(" + base + ")";
  std::string s = "cycle(";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += ",";
    s += word[i].gen + (word[i].dagger ? "+" : "") + ":" + std::to_string(word[i].enter) + ">" +
         std::to_string(word[i].exit);
  }
  return s + ")";
}

Diagram Diagram::identity(const ObjectExpr& a) {
  Diagram d = DA::make(a, a);
  for (int i = 0; i < d.num_inputs(); ++i) DA::connect(d, d.input_port(i), d.output_port(i));
  return d;
}

Diagram Diagram::symmetry(const ObjectExpr& a, const ObjectExpr& b) {
  Diagram d = DA::make(a * b, b * a);
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  for (int i = 0; i < na; ++i) DA::connect(d, d.input_port(i), d.output_port(nb + i));
  for (int j = 0; j < nb; ++j) DA::connect(d, d.input_port(na + j), d.output_port(j));
  return d;
}

Diagram Diagram::cup(const ObjectExpr& a) {
  Diagram d = DA::make(ObjectExpr::unit(), dual_object(a) * a);
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) DA::connect(d, d.output_port(i), d.output_port(n + i), {Bend::Cup});
  return d;
}

Diagram Diagram::cap(const ObjectExpr& a) {
  Diagram d = DA::make(a * dual_object(a), ObjectExpr::unit());
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) DA::connect(d, d.input_port(i), d.input_port(n + i), {Bend::Cap});
  return d;
}

Diagram Diagram::box(const Generator& g) {
  Diagram d = DA::make(g.dom, g.cod);
  const int id = DA::add_node(d, g.name, false, g.dom.factors(), g.cod.factors());
  const Node& n = d.nodes_[id];
  for (int i = 0; i < n.n_dom; ++i) DA::connect(d, d.input_port(i), n.port(i));
  for (int j = 0; j < n.n_cod; ++j) DA::connect(d, n.port(n.n_dom + j), d.output_port(j));
  return d;
}

Diagram Diagram::then(const Diagram& next) const {
  if (cod_ != next.dom_)
    throw Error(ErrorCode::CompositionMismatch,
                "cannot compose diagrams: " + cod_.str() + " vs " + next.dom_.str());
  Diagram out = DA::make(dom_, next.cod_);
  std::vector<int> off1, off2;
  for (const auto& n : nodes_) {
    off1.push_back(out.num_ports());
    DA::add_node(out, n.gen, n.dagger, DA::node_types(*this, n, true), DA::node_types(*this, n, false));
  }
  for (const auto& n : next.nodes_) {
    off2.push_back(out.num_ports());
    DA::add_node(out, n.gen, n.dagger, DA::node_types(next, n, true), DA::node_types(next, n, false));
  }
  Glue glue(out.num_ports());
  for (const auto& f : cod_.factors()) glue.add_virtual(f);
  auto map1 = [&](int p) {
    const Port& pt = ports_[p];
    if (pt.node >= 0) return off1[pt.node] + pt.index;
    return pt.upper ? pt.index : glue.virt(pt.index);
  };
  auto map2 = [&](int p) {
    const Port& pt = next.ports_[p];
    if (pt.node >= 0) return off2[pt.node] + pt.index;
    return pt.upper ? glue.virt(pt.index) : out.num_inputs() + pt.index;
  };
  for (int p = 0; p < num_ports(); ++p)
    if (p < partner_[p]) glue.connect(map1(p), map1(partner_[p]), bends_[p]);
  for (int p = 0; p < next.num_ports(); ++p)
    if (p < next.partner_[p]) glue.connect(map2(p), map2(next.partner_[p]), next.bends_[p]);
  out.loops_ = loops_;
  out.loops_.insert(out.loops_.end(), next.loops_.begin(), next.loops_.end());
  glue.resolve(out);
  return out;
}

Diagram Diagram::tensor(const Diagram& rhs) const {
  Diagram out = DA::make(dom_ * rhs.dom_, cod_ * rhs.cod_);
  std::vector<int> off1, off2;
  for (const auto& n : nodes_) {
    off1.push_back(out.num_ports());
    DA::add_node(out, n.gen, n.dagger, DA::node_types(*this, n, true), DA::node_types(*this, n, false));
  }
  for (const auto& n : rhs.nodes_) {
    off2.push_back(out.num_ports());
    DA::add_node(out, n.gen, n.dagger, DA::node_types(rhs, n, true), DA::node_types(rhs, n, false));
  }
  auto map1 = [&](int p) {
    const Port& pt = ports_[p];
    if (pt.node >= 0) return off1[pt.node] + pt.index;
    return pt.upper ? out.input_port(pt.index) : out.output_port(pt.index);
  };
  auto map2 = [&](int p) {
    const Port& pt = rhs.ports_[p];
    if (pt.node >= 0) return off2[pt.node] + pt.index;
    return pt.upper ? out.input_port(num_inputs() + pt.index)
                    : out.output_port(num_outputs() + pt.index);
  };
  for (int p = 0; p < num_ports(); ++p)
    if (p < partner_[p]) DA::connect(out, map1(p), map1(partner_[p]), bends_[p]);
  for (int p = 0; p < rhs.num_ports(); ++p)
    if (p < rhs.partner_[p]) DA::connect(out, map2(p), map2(rhs.partner_[p]), rhs.bends_[p]);
  out.loops_ = loops_;
  out.loops_.insert(out.loops_.end(), rhs.loops_.begin(), rhs.loops_.end());
  return out;
}

Diagram Diagram::flipped() const {
  Diagram out = DA::make(cod_, dom_);
  std::vector<int> map(ports_.size());
  for (int p = 0; p < num_ports(); ++p) {
    const Port& pt = ports_[p];
    if (pt.node < 0) map[p] = pt.upper ? out.output_port(pt.index) : out.input_port(pt.index);
  }
  for (const auto& n : nodes_) {
    const int first = out.num_ports();
    DA::add_node(out, n.gen, !n.dagger, DA::node_types(*this, n, false), DA::node_types(*this, n, true));
    for (int j = 0; j < n.n_cod; ++j) map[n.port(n.n_dom + j)] = first + j;
    for (int i = 0; i < n.n_dom; ++i) map[n.port(i)] = first + n.n_cod + i;
  }
  for (int p = 0; p < num_ports(); ++p)
    if (p < partner_[p]) DA::connect(out, map[p], map[partner_[p]], swap_bends(bends_[p]));
  out.loops_ = loops_;
  for (auto& l : out.loops_)
    for (auto& letter : l.word) letter.dagger = !letter.dagger;
  return out;
}

bool Diagram::is_source(int p) const {
  const Port& pt = ports_[p];
  if (pt.node < 0) return pt.upper ? !pt.type.dual : pt.type.dual;
  return pt.upper ? pt.type.dual : !pt.type.dual;
}

std::vector<int> Diagram::wires() const {
  std::vector<int> out;
  for (int p = 0; p < num_ports(); ++p)
    if (is_source(p)) out.push_back(p);
  return out;
}

void Diagram::validate() const {
  for (int p = 0; p < num_ports(); ++p) {
    const int q = partner_[p];
    if (q < 0 || q >= num_ports() || partner_[q] != p || q == p)
      throw std::logic_error("diagram: port " + std::to_string(p) + " is not matched");
    if (ports_[p].type.base != ports_[q].type.base)
      throw std::logic_error("diagram: wire joins different objects");
    if (is_source(p) == is_source(q))
      throw std::logic_error("diagram: wire " + std::to_string(p) + "-" + std::to_string(q) +
                             " has inconsistent direction");
  }
}

namespace {

Diagram build(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case TermKind::Gen: {
      const Generator* g = sig.find_generator(t.name());
      if (!g) throw Error(ErrorCode::UnknownName, "unknown generator '" + t.name() + "'");
      return Diagram::box(*g);
    }
    case TermKind::Id:
      return Diagram::identity(t.object());
    case TermKind::Sym:
      return Diagram::symmetry(t.object(), t.object2());
    case TermKind::Unit:
      return Diagram::cup(t.object());
    case TermKind::Counit:
      return Diagram::cap(t.object());
    case TermKind::Dagger:
      return build(t.child(0), sig).flipped();
    case TermKind::Compose:
      return build(t.child(1), sig).then(build(t.child(0), sig));
    case TermKind::Tensor:
      return build(t.child(0), sig).tensor(build(t.child(1), sig));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Diagram to_diagram(const Term& t, const Signature& sig) { return build(t, sig); }
Diagram to_diagram(const TypedTerm& t, const Signature& sig) { return build(t.term, sig); }

// ---------------------------------------------------------------------------
// Canonical form

namespace {

std::string node_label(const Diagram::Node& n) { return n.gen + (n.dagger ? "+" : ""); }

LoopLabel cycle_label(const Diagram& d, const std::vector<int>& comp) {
  const auto& nodes = d.nodes();
  auto walk = [&](int start_port) {
    std::vector<LoopLetter> word;
    int node = d.port(start_port).node;
    int enter = start_port;
    do {
      const auto& n = nodes[node];
      const int ei = d.port(enter).index;
      const int xi = 1 - ei;
      word.push_back({n.gen, n.dagger, ei, xi});
      const int next = d.partner(n.port(xi));
      node = d.port(next).node;
      enter = next;
    } while (enter != start_port);
    return word;
  };
  std::vector<LoopLetter> best;
  bool have = false;
  const auto& s = nodes[comp.front()];
  for (int dir = 0; dir < 2; ++dir) {
    const auto word = walk(s.port(dir));
    for (std::size_t r = 0; r < word.size(); ++r) {
      std::vector<LoopLetter> rot(word.begin() + r, word.end());
      rot.insert(rot.end(), word.begin(), word.begin() + r);
      if (!have || rot < best) {
        best = std::move(rot);
        have = true;
      }
    }
  }
  return {best, {}};
}

std::string serialize_component(const Diagram& d, int start) {
  std::map<int, int> num;
  std::vector<int> order{start};
  num[start] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& n = d.nodes()[order[k]];
    for (int i = 0; i < n.num_ports(); ++i) {
      const int w = d.port(d.partner(n.port(i))).node;
      if (!num.count(w)) {
        num[w] = static_cast<int>(order.size());
        order.push_back(w);
      }
    }
  }
  std::string s;
  for (int v : order) {
    const auto& n = d.nodes()[v];
    s += node_label(n) + "(";
    for (int i = 0; i < n.num_ports(); ++i) {
      const int q = d.partner(n.port(i));
      s += std::to_string(num[d.port(q).node]) + "." + std::to_string(d.port(q).index) + ",";
    }
    s += ")";
  }
  return s;
}

}  // namespace

CanonicalKey canonical_key(const Diagram& d) {
  const auto& nodes = d.nodes();
  std::vector<int> num(nodes.size(), -1);
  std::vector<int> order;
  auto visit = [&](int port) {
    const int w = d.port(port).node;
    if (w >= 0 && num[w] < 0) {
      num[w] = static_cast<int>(order.size());
      order.push_back(w);
    }
  };
  const int nb = d.num_inputs() + d.num_outputs();
  for (int b = 0; b < nb; ++b) visit(d.partner(b));
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& n = nodes[order[k]];
    for (int i = 0; i < n.num_ports(); ++i) visit(d.partner(n.port(i)));
  }
  auto ref = [&](int q) {
    const auto& pt = d.port(q);
    if (pt.node < 0) return std::string(pt.upper ? "i" : "o") + std::to_string(pt.index);
    return std::to_string(num[pt.node]) + "." + std::to_string(pt.index);
  };

  std::ostringstream out;
  out << "T:" << d.dom().str() << "->" << d.cod().str() << ";B:";
  for (int b = 0; b < nb; ++b) out << ref(d.partner(b)) << ",";
  out << ";N:";
  for (int v : order) {
    const auto& n = nodes[v];
    out << node_label(n) << "(";
    for (int i = 0; i < n.num_ports(); ++i) out << ref(d.partner(n.port(i))) << ",";
    out << ")";
  }

  // closed components
  std::vector<std::string> closed;
  std::vector<LoopLabel> loops = d.loops();
  std::vector<bool> done(nodes.size(), false);
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (num[v] >= 0 || done[v]) continue;
    std::vector<int> comp{static_cast<int>(v)};
    done[v] = true;
    bool cycle = true;
    for (std::size_t k = 0; k < comp.size(); ++k) {
      const auto& n = nodes[comp[k]];
      if (n.num_ports() != 2) cycle = false;
      for (int i = 0; i < n.num_ports(); ++i) {
        const int w = d.port(d.partner(n.port(i))).node;
        if (!done[w]) {
          done[w] = true;
          comp.push_back(w);
        }
      }
    }
    if (cycle) {
      loops.push_back(cycle_label(d, comp));
      continue;
    }
    std::string best;
    for (int s : comp) {
      std::string c = serialize_component(d, s);
      if (best.empty() || c < best) best = std::move(c);
    }
    closed.push_back(std::move(best));
  }
  std::sort(closed.begin(), closed.end());
  std::sort(loops.begin(), loops.end());
  out << ";C:";
  for (const auto& c : closed) out << "[" << c << "]";
  out << ";L:";
  for (const auto& l : loops) out << l.str() << ",";
  return {out.str()};
}

bool equal_diagrams(const TypedTerm& a, const TypedTerm& b, const Signature& sig) {
  if (a.dom != b.dom || a.cod != b.cod)
    throw Error(ErrorCode::TypeMismatch, "cannot compare " + a.dom.str() + " -> " + a.cod.str() +
                                             " with " + b.dom.str() + " -> " + b.cod.str());
  return canonical_key(to_diagram(a, sig)) == canonical_key(to_diagram(b, sig));
}

Equation make_equation(std::string name, TypedTerm lhs, TypedTerm rhs) {
  if (lhs.dom != rhs.dom || lhs.cod != rhs.cod)
    throw Error(ErrorCode::TypeMismatch, "equation '" + name + "' relates " + lhs.dom.str() +
                                             " -> " + lhs.cod.str() + " and " + rhs.dom.str() +
                                             " -> " + rhs.cod.str());
  return {std::move(name), std::move(lhs), std::move(rhs)};
}

// ---------------------------------------------------------------------------
// Matching and rewriting

std::string Match::str() const {
  auto list = [](const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
  };
  return "nodes=" + list(nodes) + " cuts=" + list(cuts) + " loops=" + list(loops);
}

namespace {

bool same_node_label(const Diagram::Node& a, const Diagram::Node& b) {
  return a.gen == b.gen && a.dagger == b.dagger && a.n_dom == b.n_dom && a.n_cod == b.n_cod;
}

/// Boundary-to-boundary wires of a pattern, by source port.
std::vector<int> cut_wires(const Diagram& pattern) {
  std::vector<int> out;
  for (int p : pattern.wires())
    if (pattern.port(p).node < 0 && pattern.port(pattern.partner(p)).node < 0) out.push_back(p);
  return out;
}

/// Wire ids of the host touched by the image of the pattern's nodes.
std::set<int> touched_wires(const Diagram& host, const std::vector<int>& image) {
  std::set<int> out;
  for (int h : image) {
    const auto& n = host.nodes()[h];
    for (int i = 0; i < n.num_ports(); ++i) {
      const int p = n.port(i);
      out.insert(host.is_source(p) ? p : host.partner(p));
    }
  }
  return out;
}

bool node_consistent(const Diagram& host, const Diagram& pattern, const std::vector<int>& image,
                     int i) {
  const auto& pn = pattern.nodes()[i];
  const auto& hn = host.nodes()[image[i]];
  for (int k = 0; k < pn.num_ports(); ++k) {
    const auto& q = pattern.port(pattern.partner(pn.port(k)));
    if (q.node < 0 || q.node > i) continue;
    const int expected = host.nodes()[image[q.node]].port(q.index);
    if (host.partner(hn.port(k)) != expected) return false;
  }
  return true;
}

class Matcher {
 public:
  Matcher(const Diagram& host, const Diagram& pattern, std::size_t limit)
      : host_(host), pattern_(pattern), limit_(limit), cuts_(cut_wires(pattern)) {}

  std::vector<Match> run() {
    if (pattern_.nodes().size() <= host_.nodes().size()) search_nodes(0);
    return std::move(out_);
  }

 private:
  void search_nodes(std::size_t i) {
    if (out_.size() >= limit_) return;
    if (i == pattern_.nodes().size()) {
      touched_ = touched_wires(host_, cur_.nodes);
      search_cuts(0);
      return;
    }
    for (std::size_t h = 0; h < host_.nodes().size(); ++h) {
      if (std::find(cur_.nodes.begin(), cur_.nodes.end(), static_cast<int>(h)) != cur_.nodes.end())
        continue;
      if (!same_node_label(pattern_.nodes()[i], host_.nodes()[h])) continue;
      cur_.nodes.push_back(static_cast<int>(h));
      if (node_consistent(host_, pattern_, cur_.nodes, static_cast<int>(i))) search_nodes(i + 1);
      cur_.nodes.pop_back();
    }
  }

  void search_cuts(std::size_t c) {
    if (out_.size() >= limit_) return;
    if (c == cuts_.size()) {
      search_loops(0, 0);
      return;
    }
    const std::string& base = pattern_.port(cuts_[c]).type.base;
    for (int w : host_.wires()) {
      if (touched_.count(w)) continue;
      if (std::find(cur_.cuts.begin(), cur_.cuts.end(), w) != cur_.cuts.end()) continue;
      if (host_.port(w).type.base != base) continue;
      cur_.cuts.push_back(w);
      search_cuts(c + 1);
      cur_.cuts.pop_back();
    }
  }

  void search_loops(std::size_t l, int min_host) {
    if (out_.size() >= limit_) return;
    const auto& ploops = pattern_.loops();
    if (l == ploops.size()) {
      out_.push_back(cur_);
      return;
    }
    // identical pattern loops take increasing host indices
    const bool repeat = l > 0 && ploops[l] == ploops[l - 1];
    for (int h = repeat ? min_host : 0; h < static_cast<int>(host_.loops().size()); ++h) {
      if (std::find(cur_.loops.begin(), cur_.loops.end(), h) != cur_.loops.end()) continue;
      if (!(host_.loops()[h] == ploops[l])) continue;
      cur_.loops.push_back(h);
      search_loops(l + 1, h + 1);
      cur_.loops.pop_back();
    }
  }

  const Diagram& host_;
  const Diagram& pattern_;
  std::size_t limit_;
  std::vector<int> cuts_;
  std::set<int> touched_;
  Match cur_;
  std::vector<Match> out_;
};

void check_site(const Diagram& host, const Diagram& pattern, const Match& m) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::NoSuchMatch, "site " + m.str() + " is not a match: " + why);
  };
  if (m.nodes.size() != pattern.nodes().size()) fail("wrong number of nodes");
  const auto cuts = cut_wires(pattern);
  if (m.cuts.size() != cuts.size()) fail("wrong number of cut wires");
  if (m.loops.size() != pattern.loops().size()) fail("wrong number of loops");
  std::set<int> used;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const int h = m.nodes[i];
    if (h < 0 || h >= static_cast<int>(host.nodes().size()) || !used.insert(h).second)
      fail("bad node image");
    if (!same_node_label(pattern.nodes()[i], host.nodes()[h])) fail("node label differs");
  }
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    if (!node_consistent(host, pattern, m.nodes, static_cast<int>(i))) fail("wiring differs");
  const auto touched = touched_wires(host, m.nodes);
  const auto host_wires = host.wires();
  std::set<int> cut_used;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const int w = m.cuts[c];
    if (!std::binary_search(host_wires.begin(), host_wires.end(), w)) fail("cut is not a wire");
    if (touched.count(w) || !cut_used.insert(w).second) fail("cut wire reused");
    if (host.port(w).type.base != pattern.port(cuts[c]).type.base) fail("cut label differs");
  }
  std::set<int> loop_used;
  for (std::size_t l = 0; l < m.loops.size(); ++l) {
    const int h = m.loops[l];
    if (h < 0 || h >= static_cast<int>(host.loops().size()) || !loop_used.insert(h).second)
      fail("bad loop image");
    if (!(host.loops()[h] == pattern.loops()[l])) fail("loop label differs");
  }
}

}  // namespace

std::vector<Match> enumerate_matches(const Diagram& host, const Diagram& pattern, std::size_t limit) {
  return Matcher(host, pattern, limit).run();
}

Diagram rewrite(const Diagram& host, const Diagram& lhs, const Diagram& rhs, const Match& site) {
  if (lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod())
    throw Error(ErrorCode::TypeMismatch, "rewrite sides have different types");
  check_site(host, lhs, site);

  Diagram out = DA::make(host.dom(), host.cod());
  std::vector<int> host_map(host.num_ports(), -1);
  for (int b = 0; b < host.num_inputs() + host.num_outputs(); ++b) host_map[b] = b;
  std::vector<int> matched_as(host.nodes().size(), -1);
  for (std::size_t i = 0; i < site.nodes.size(); ++i) matched_as[site.nodes[i]] = static_cast<int>(i);
  for (std::size_t v = 0; v < host.nodes().size(); ++v) {
    if (matched_as[v] >= 0) continue;
    const auto& n = host.nodes()[v];
    const int first = out.num_ports();
    DA::add_node(out, n.gen, n.dagger, DA::node_types(host, n, true), DA::node_types(host, n, false));
    for (int i = 0; i < n.num_ports(); ++i) host_map[n.port(i)] = first + i;
  }
  std::vector<int> rhs_map(rhs.num_ports(), -1);
  for (const auto& n : rhs.nodes()) {
    const int first = out.num_ports();
    DA::add_node(out, n.gen, n.dagger, DA::node_types(rhs, n, true), DA::node_types(rhs, n, false));
    for (int i = 0; i < n.num_ports(); ++i) rhs_map[n.port(i)] = first + i;
  }

  Glue glue(out.num_ports());
  const int nb = lhs.num_inputs() + lhs.num_outputs();
  for (int b = 0; b < nb; ++b) glue.add_virtual(lhs.port(b).type);

  // host endpoint -> glue vertex, or -1 when internal to the matched subgraph
  auto host_end = [&](int p) {
    if (host_map[p] >= 0) return host_map[p];
    const auto& pt = host.port(p);
    const auto& pn = lhs.nodes()[matched_as[pt.node]];
    const int q = lhs.partner(pn.port(pt.index));
    if (lhs.port(q).node >= 0) return -1;
    return glue.virt(q);
  };
  const auto cuts = cut_wires(lhs);
  for (int w : host.wires()) {
    const int t = host.partner(w);
    auto c = std::find(site.cuts.begin(), site.cuts.end(), w);
    if (c != site.cuts.end()) {
      const int src = cuts[c - site.cuts.begin()];
      glue.connect(host_map[w], glue.virt(src), host.bends(w));
      glue.connect(glue.virt(lhs.partner(src)), host_map[t], {});
      continue;
    }
    const int a = host_end(w);
    const int b = host_end(t);
    if (a < 0 && b < 0) continue;
    if (a < 0 || b < 0) throw std::logic_error("rewrite: half-internal wire");
    glue.connect(a, b, host.bends(w));
  }
  for (int p = 0; p < rhs.num_ports(); ++p) {
    const int q = rhs.partner(p);
    if (p > q) continue;
    auto end = [&](int x) { return rhs.port(x).node >= 0 ? rhs_map[x] : glue.virt(x); };
    glue.connect(end(p), end(q), rhs.bends(p));
  }

  auto& loops = DA::loops(out);
  for (std::size_t l = 0; l < host.loops().size(); ++l)
    if (std::find(site.loops.begin(), site.loops.end(), static_cast<int>(l)) == site.loops.end())
      loops.push_back(host.loops()[l]);
  loops.insert(loops.end(), rhs.loops().begin(), rhs.loops().end());
  glue.resolve(out);
  return out;
}

Diagram apply_equation(const Diagram& host, const Equation& eq, const Signature& sig,
                       const Match& site) {
  if (eq.lhs.dom != eq.rhs.dom || eq.lhs.cod != eq.rhs.cod)
    throw Error(ErrorCode::TypeMismatch, "equation '" + eq.name + "' is ill-typed");
  return rewrite(host, to_diagram(eq.lhs, sig), to_diagram(eq.rhs, sig), site);
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_dot(const Diagram& d) {
  std::ostringstream out;
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  out << "digraph diagram {\n";
  out << "  rankdir=TB;\n";
  out << "  subgraph inputs {\n    rank=source;\n";
  for (int i = 0; i < d.num_inputs(); ++i)
    out << "    in" << i << " [shape=plaintext, label=" << quote(d.port(d.input_port(i)).type.str())
        << "];\n";
  out << "  }\n  subgraph outputs {\n    rank=sink;\n";
  for (int j = 0; j < d.num_outputs(); ++j)
    out << "    out" << j << " [shape=plaintext, label="
        << quote(d.port(d.output_port(j)).type.str()) << "];\n";
  out << "  }\n";
  for (std::size_t k = 0; k < d.nodes().size(); ++k) {
    const auto& n = d.nodes()[k];
    out << "  n" << k << " [shape=box, label=" << quote(n.gen + (n.dagger ? "\xE2\x80\xA0" : ""))
        << "];\n";
  }
  auto endpoint = [&](int p) {
    const auto& pt = d.port(p);
    if (pt.node >= 0) return "n" + std::to_string(pt.node);
    return (pt.upper ? "in" : "out") + std::to_string(pt.index);
  };
  int cups = 0, caps = 0;
  std::ostringstream edges;
  for (int w : d.wires()) {
    const std::string label = quote(d.port(w).type.base);
    std::string prev = endpoint(w);
    for (Bend b : d.bends(w)) {
      const std::string name = b == Bend::Cup ? "cup" + std::to_string(cups++)
                                              : "cap" + std::to_string(caps++);
      out << "  " << name << " [shape=point];\n";
      edges << "  " << prev << " -> " << name << " [label=" << label << "];\n";
      prev = name;
    }
    edges << "  " << prev << " -> " << endpoint(d.partner(w)) << " [label=" << label << "];\n";
  }
  for (std::size_t k = 0; k < d.loops().size(); ++k)
    out << "  loop" << k << " [shape=circle, label=" << quote(d.loops()[k].str()) << "];\n";
  out << edges.str() << "}\n";
  return out.str();
}

}  // namespace ccat
