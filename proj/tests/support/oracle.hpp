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

// Independent reference evaluators used by the tests.
#pragma once

#include <map>
#include <vector>

#include "diagram.hpp"
#include "model.hpp"

namespace ccat::testing {

/// Entry of a node's matrix indexed by per-port values (dom ports first).
inline Scalar node_entry(const Matrix& n, const std::vector<std::size_t>& dom_dims,
                         const std::vector<std::size_t>& cod_dims,
                         const std::vector<std::size_t>& values) {
  std::size_t col = 0, row = 0, k = 0;
  for (auto d : dom_dims) col = col * d + values[k++];
  for (auto d : cod_dims) row = row * d + values[k++];
  return n.at(row, col);
}

/// Brute-force contraction of a diagram as a tensor network: one summation
/// index per wire, a Kronecker delta along every wire, products of node
/// entries, and closed loops summed around their ring.
inline Matrix contract(const Diagram& d, const Model& m, const Signature& sig) {
  const auto& alg = m.algebra();
  std::map<int, int> var_of_wire;
  std::vector<int> port_var(d.num_ports());
  std::vector<std::size_t> var_dim;
  for (int p = 0; p < d.num_ports(); ++p) {
    const int w = d.is_source(p) ? p : d.partner(p);
    auto it = var_of_wire.find(w);
    if (it == var_of_wire.end()) {
      it = var_of_wire.emplace(w, static_cast<int>(var_dim.size())).first;
      var_dim.push_back(m.dim(d.port(p).type.base));
    }
    port_var[p] = it->second;
  }
  struct NodeData {
    Matrix mat;
    std::vector<std::size_t> dom_dims, cod_dims;
    std::vector<int> vars;
  };
  std::vector<NodeData> nodes;
  for (const auto& n : d.nodes()) {
    NodeData nd;
    nd.mat = n.dagger ? m.generator(n.gen).adjoint() : m.generator(n.gen);
    for (int i = 0; i < n.num_ports(); ++i) {
      const auto dim = m.dim(d.port(n.port(i)).type.base);
      (i < n.n_dom ? nd.dom_dims : nd.cod_dims).push_back(dim);
      nd.vars.push_back(port_var[n.port(i)]);
    }
    nodes.push_back(std::move(nd));
  }
  Matrix out(alg, m.dim(d.cod()), m.dim(d.dom()));
  std::vector<std::size_t> val(var_dim.size(), 0);
  for (;;) {
    Scalar prod = alg->one();
    for (const auto& nd : nodes) {
      std::vector<std::size_t> vals;
      for (int v : nd.vars) vals.push_back(val[v]);
      prod = alg->mul(prod, node_entry(nd.mat, nd.dom_dims, nd.cod_dims, vals));
    }
    std::size_t row = 0, col = 0;
    for (int i = 0; i < d.num_inputs(); ++i)
      col = col * var_dim[port_var[d.input_port(i)]] + val[port_var[d.input_port(i)]];
    for (int j = 0; j < d.num_outputs(); ++j)
      row = row * var_dim[port_var[d.output_port(j)]] + val[port_var[d.output_port(j)]];
    out.set(row, col, alg->add(out.at(row, col), prod));
    std::size_t k = 0;
    while (k < val.size() && ++val[k] == var_dim[k]) val[k++] = 0;
    if (k == val.size()) break;
  }
  // Closed loops.
  Scalar factor = alg->one();
  for (const auto& loop : d.loops()) {
    Scalar s = alg->zero();
    if (loop.word.empty()) {
      for (std::size_t i = 0; i < m.dim(loop.base); ++i) s = alg->add(s, alg->one());
    } else {
      const std::size_t k = loop.word.size();
      std::vector<Matrix> mats;
      std::vector<std::vector<std::size_t>> doms, cods;
      std::vector<std::size_t> ring_dim(k);
      for (std::size_t j = 0; j < k; ++j) {
        const auto& l = loop.word[j];
        const Generator* g = sig.find_generator(l.gen);
        ObjectExpr dom = g->dom, cod = g->cod;
        if (l.dagger) std::swap(dom, cod);
        mats.push_back(l.dagger ? m.generator(l.gen).adjoint() : m.generator(l.gen));
        doms.push_back(m.dims(dom));
        cods.push_back(m.dims(cod));
        const auto all = dom * cod;
        ring_dim[j] = m.dim(all.factors()[l.enter].base);
      }
      std::vector<std::size_t> rv(k, 0);
      for (;;) {
        Scalar prod = alg->one();
        for (std::size_t j = 0; j < k; ++j) {
          const auto& l = loop.word[j];
          std::vector<std::size_t> vals(2);
          vals[l.enter] = rv[j];
          vals[l.exit] = rv[(j + 1) % k];
          prod = alg->mul(prod, node_entry(mats[j], doms[j], cods[j], vals));
        }
        s = alg->add(s, prod);
        std::size_t q = 0;
        while (q < k && ++rv[q] == ring_dim[q]) rv[q++] = 0;
        if (q == k) break;
      }
    }
    factor = alg->mul(factor, s);
  }
  return out.scaled(factor);
}

}  // namespace ccat::testing
