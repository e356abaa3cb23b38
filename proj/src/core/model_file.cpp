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

#include "model_file.hpp"

#include <fstream>
#include <sstream>

namespace ccat {

using Json = nlohmann::ordered_json;

const NaturalFamily* ModelFile::family(const std::string& name) const {
  for (const auto& f : families)
    if (f.name == name) return &f;
  return nullptr;
}

const NaturalFamily* ModelFile::family_of_kind(FamilyKind kind) const {
  for (const auto& f : families)
    if (f.kind == kind) return &f;
  return nullptr;
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::ModelError, msg); }

mpq_class parse_rational(const Json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) bad("not a rational: '" + j.get<std::string>() + "'");
    if (q.get_den() == 0) bad("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }
  bad("expected an integer or a \"p/q\" string, got " + j.dump());
}

double parse_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const mpq_class q = parse_rational(j);
    return q.get_d();
  }
  bad("expected a number, got " + j.dump());
}

std::string json_word(const Json& j, const std::string& what) {
  if (!j.is_string()) bad(what + " must be a string");
  return j.get<std::string>();
}

}  // namespace

Scalar parse_scalar_json(const Json& j, const ScalarAlgebra& alg) {
  const std::string n = alg.name();
  if (n == "bool") {
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number_integer() && (j.get<long>() == 0 || j.get<long>() == 1)) return j.get<long>() == 1;
    if (j == "0" || j == "1") return j == "1";
    bad("expected a boolean entry, got " + j.dump());
  }
  if (n == "rational") return parse_rational(j);
  if (n == "complex-rational") {
    if (j.is_array()) {
      if (j.size() != 2) bad("complex entries are [re, im], got " + j.dump());
      return ComplexRational{parse_rational(j[0]), parse_rational(j[1])};
    }
    return ComplexRational{parse_rational(j), mpq_class(0)};
  }
  if (n == "complex-float") {
    if (j.is_array()) {
      if (j.size() != 2) bad("complex entries are [re, im], got " + j.dump());
      return std::complex<double>(parse_double(j[0]), parse_double(j[1]));
    }
    return std::complex<double>(parse_double(j), 0.0);
  }
  // Semilattice: element index, or the printed form s<k>.
  const auto els = *alg.elements();
  long k = -1;
  if (j.is_number_integer()) k = j.get<long>();
  else if (j.is_string() && j.get<std::string>().size() > 1 && j.get<std::string>()[0] == 's')
    k = std::stol(j.get<std::string>().substr(1));
  if (k < 0 || k >= static_cast<long>(els.size()))
    bad("expected a lattice element index below " + std::to_string(els.size()) + ", got " +
        j.dump());
  return els[k];
}

Matrix parse_matrix_json(const Json& j, const AlgebraPtr& alg, std::size_t rows, std::size_t cols,
                         const std::string& what) {
  if (!j.is_array()) bad(what + ": expected an array of entries");
  std::vector<Scalar> e;
  // Complex entries may themselves be [re, im] pairs, so a flat complex
  // array is one of rows*cols scalars or pairs of scalars.
  bool nested = !j.empty() && j[0].is_array();
  if (nested && alg->name().rfind("complex", 0) == 0 && j.size() == rows * cols) {
    bool flat = true;
    for (const auto& x : j)
      if (x.is_array() && (x.size() != 2 || x[0].is_array() || x[1].is_array())) flat = false;
    nested = !flat;
  }
  if (nested) {
    if (j.size() != rows) bad(what + ": expected " + std::to_string(rows) + " rows, got " +
                              std::to_string(j.size()));
    for (const auto& r : j) {
      if (!r.is_array() || r.size() != cols)
        bad(what + ": every row needs " + std::to_string(cols) + " entries");
      for (const auto& x : r) e.push_back(parse_scalar_json(x, *alg));
    }
  } else {
    if (j.size() != rows * cols)
      bad(what + ": expected " + std::to_string(rows * cols) + " entries (" +
          std::to_string(rows) + "x" + std::to_string(cols) + "), got " + std::to_string(j.size()));
    for (const auto& x : j) e.push_back(parse_scalar_json(x, *alg));
  }
  return Matrix(alg, rows, cols, std::move(e));
}

ModelFile parse_model_file(const std::string& text, const Signature* sig) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) bad("model file must be a JSON object");
  for (const auto& [key, _] : root.items())
    if (key != "kind" && key != "scalars" && key != "objects" && key != "generators" &&
        key != "meet_table" && key != "unit_scale" && key != "families" && key != "protocols" &&
        key != "tolerance" && key != "description")
      bad("unknown field '" + key + "'");
  if (!root.contains("kind")) bad("missing field 'kind'");
  ModelSpec spec;
  spec.kind = parse_model_kind(json_word(root["kind"], "kind"));

  double tolerance = 1e-9;
  if (root.contains("tolerance")) {
    if (!root["tolerance"].is_number()) bad("tolerance must be a number");
    tolerance = root["tolerance"].get<double>();
    if (tolerance < 0) bad("tolerance must be >= 0");
  }
  std::string scalars;
  if (root.contains("scalars")) scalars = json_word(root["scalars"], "scalars");
  else if (spec.kind == ModelKind::Rel || spec.kind == ModelKind::FinSet) scalars = "bool";
  else if (spec.kind == ModelKind::FdVec) scalars = "rational";
  else scalars = "semilattice";
  if (scalars == "bool") spec.algebra = boolean_algebra();
  else if (scalars == "rational") spec.algebra = rational_algebra();
  else if (scalars == "complex-rational") spec.algebra = complex_rational_algebra();
  else if (scalars == "complex-float") spec.algebra = complex_float_algebra(tolerance);
  else if (scalars == "semilattice") {
    if (!root.contains("meet_table")) bad("semilattice scalars need a 'meet_table'");
    std::vector<std::vector<int>> meet;
    try {
      meet = root["meet_table"].get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception&) {
      bad("meet_table must be a square array of element indices");
    }
    spec.algebra = semilattice_algebra(std::move(meet));
  } else {
    bad("unknown scalars '" + scalars + "'");
  }
  if (root.contains("meet_table") && scalars != "semilattice")
    bad("meet_table is only allowed with semilattice scalars");

  if (root.contains("objects")) {
    if (!root["objects"].is_object()) bad("objects must map names to dimensions");
    for (const auto& [name, d] : root["objects"].items()) {
      if (!d.is_number_integer() || d.get<long>() < 0)
        bad("dimension of '" + name + "' must be a nonnegative integer");
      spec.objects.push_back({name, static_cast<std::size_t>(d.get<long>())});
    }
  } else if (spec.kind == ModelKind::Semilattice) {
    spec.objects.push_back({"A", 1});
  } else {
    bad("missing field 'objects'");
  }
  auto dim_of = [&](const ObjectExpr& w, const std::string& what) {
    std::size_t d = 1;
    for (const auto& f : w.factors()) {
      bool found = false;
      for (const auto& [name, n] : spec.objects)
        if (name == f.base) {
          d *= n;
          found = true;
        }
      if (!found) bad(what + " mentions unknown object '" + f.base + "'");
    }
    return d;
  };

  if (root.contains("generators")) {
    if (!root["generators"].is_object()) bad("generators must map names to matrices");
    for (const auto& [name, g] : root["generators"].items()) {
      Generator gen{name, {}, {}};
      const Json* entries = &g;
      if (g.is_object()) {
        if (!g.contains("dom") || !g.contains("cod") || !g.contains("entries"))
          bad("generator '" + name + "' needs dom, cod and entries");
        try {
          gen.dom = parse_object(json_word(g["dom"], "dom"));
          gen.cod = parse_object(json_word(g["cod"], "cod"));
        } catch (const Error& e) {
          bad("generator '" + name + "': " + e.what());
        }
        entries = &g["entries"];
        if (sig) {
          if (const Generator* s = sig->find_generator(name); s && (s->dom != gen.dom || s->cod != gen.cod))
            bad("generator '" + name + "' is " + gen.dom.str() + " -> " + gen.cod.str() +
                " in the model but " + s->dom.str() + " -> " + s->cod.str() + " in the source");
        }
      } else {
        const Generator* s = sig ? sig->find_generator(name) : nullptr;
        if (!s) bad("generator '" + name + "' has no declared type; give dom and cod");
        gen = *s;
      }
      const std::string what = "generator '" + name + "'";
      spec.generators.push_back({gen, parse_matrix_json(*entries, spec.algebra,
                                                        dim_of(gen.cod, what), dim_of(gen.dom, what),
                                                        what)});
    }
  }
  if (root.contains("unit_scale")) {
    if (!root["unit_scale"].is_object()) bad("unit_scale must map objects to scalars");
    for (const auto& [name, s] : root["unit_scale"].items())
      spec.unit_scale[name] = parse_scalar_json(s, *spec.algebra);
  }

  ModelFile out{build_model(spec), {}, {}, {}, tolerance};
  const Model& m = out.model;

  if (root.contains("families")) {
    if (!root["families"].is_object()) bad("families must map names to families");
    for (const auto& [name, fj] : root["families"].items()) {
      if (!fj.is_object() || !fj.contains("kind") || !fj.contains("components"))
        bad("family '" + name + "' needs kind and components");
      NaturalFamily fam{name, parse_family_kind(json_word(fj["kind"], "family kind")), {}};
      if (!fj["components"].is_object()) bad("components of '" + name + "' must be an object");
      for (const auto& [word, mj] : fj["components"].items()) {
        ObjectExpr w;
        try {
          w = parse_object(word);
        } catch (const Error& e) {
          bad("family '" + name + "': " + e.what());
        }
        const std::string what = "family '" + name + "' at " + word;
        const std::size_t d = dim_of(w, what);
        const std::size_t rows = fam.kind == FamilyKind::Diagonal ? d * d : 1;
        fam.components.emplace(w.str(), parse_matrix_json(mj, m.algebra(), rows, d, what));
      }
      validate_family(m, fam);
      out.families.push_back(std::move(fam));
    }
  }

  if (root.contains("protocols")) {
    const Json& p = root["protocols"];
    if (!p.is_object()) bad("protocols must be an object");
    for (const auto& [key, _] : p.items())
      if (key != "teleport" && key != "teleport_object") bad("unknown protocol '" + key + "'");
    if (p.contains("teleport")) {
      out.teleport_object = p.contains("teleport_object")
                                ? json_word(p["teleport_object"], "teleport_object")
                                : (spec.objects.empty() ? "" : spec.objects.front().first);
      const std::size_t d = dim_of(ObjectExpr::base(out.teleport_object), "teleport");
      if (!p["teleport"].is_array()) bad("protocols.teleport must be an array");
      std::size_t k = 0;
      for (const auto& b : p["teleport"]) {
        if (!b.is_object() || !b.contains("branch") || !b.contains("correction"))
          bad("teleport branches are {branch, correction}");
        const std::string what = "teleport branch " + std::to_string(k);
        out.teleport.push_back({k, parse_matrix_json(b["branch"], m.algebra(), d, d, what),
                                parse_matrix_json(b["correction"], m.algebra(), d, d, what)});
        ++k;
      }
    }
  }
  return out;
}

ModelFile load_model_file(const std::string& path, const Signature* sig) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ModelError, "cannot read model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model_file(buf.str(), sig);
  } catch (const Error& e) {
    throw e.prefixed(path + ": ");
  }
}

namespace {

Json scalar_json(const Scalar& s, const ScalarAlgebra& alg) {
  return std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) return v ? 1 : 0;
        else if constexpr (std::is_same_v<T, mpq_class>) return v.get_str();
        else if constexpr (std::is_same_v<T, ComplexRational>) return Json::array({v.re.get_str(), v.im.get_str()});
        else if constexpr (std::is_same_v<T, std::complex<double>>) return Json::array({v.real(), v.imag()});
        else {
          const auto els = *alg.elements();
          for (std::size_t k = 0; k < els.size(); ++k)
            if (alg.equal(els[k], s)) return k;
          return -1;
        }
      },
      s);
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(scalar_json(m.at(i, j), *m.algebra()));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

Json model_file_json(const ModelFile& f) {
  const Model& m = f.model;
  Json root;
  root["kind"] = model_kind_name(m.kind());
  root["scalars"] = m.algebra()->name();
  if (m.algebra()->name() == "complex-float") root["tolerance"] = f.tolerance;
  if (m.kind() == ModelKind::Semilattice || m.algebra()->name() == "semilattice") {
    const auto els = *m.algebra()->elements();
    Json table = Json::array();
    for (const auto& a : els) {
      Json r = Json::array();
      for (const auto& b : els) r.push_back(scalar_json(m.algebra()->mul(a, b), *m.algebra()));
      table.push_back(std::move(r));
    }
    root["meet_table"] = std::move(table);
  }
  Json objs = Json::object();
  for (const auto& o : m.signature().objects()) objs[o] = m.dim(o);
  root["objects"] = std::move(objs);
  Json gens = Json::object();
  for (const auto& g : m.signature().generators())
    gens[g.name] = {{"dom", g.dom.str()}, {"cod", g.cod.str()},
                    {"entries", matrix_json(m.generator(g.name))}};
  root["generators"] = std::move(gens);
  Json scales = Json::object();
  for (const auto& o : m.signature().objects()) {
    const Scalar s = m.unit_scale(o);
    if (!m.algebra()->equal(s, m.algebra()->one())) scales[o] = scalar_json(s, *m.algebra());
  }
  if (!scales.empty()) root["unit_scale"] = std::move(scales);
  if (!f.families.empty()) {
    Json fams = Json::object();
    for (const auto& fam : f.families) {
      Json comps = Json::object();
      for (const auto& [w, mat] : fam.components) comps[w] = matrix_json(mat);
      fams[fam.name] = {{"kind", family_kind_name(fam.kind)}, {"components", std::move(comps)}};
    }
    root["families"] = std::move(fams);
  }
  if (!f.teleport.empty()) {
    Json br = Json::array();
    for (const auto& b : f.teleport)
      br.push_back({{"branch", matrix_json(b.branch)}, {"correction", matrix_json(b.correction)}});
    root["protocols"] = {{"teleport_object", f.teleport_object}, {"teleport", std::move(br)}};
  }
  return root;
}

}  // namespace ccat
