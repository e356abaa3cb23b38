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

#include "suites.hpp"

#include <future>
#include <random>

#include "diagram.hpp"
#include "protocols.hpp"

namespace ccat {

namespace {

constexpr Suite kAll[] = {Suite::Scalars,  Suite::Dagger,  Suite::Cloning, Suite::Collapse,
                          Suite::Deleting, Suite::Product, Suite::Teleport};

[[noreturn]] void missing(Suite s, const std::string& what) {
  throw Error(ErrorCode::Usage,
              std::string("suite '") + suite_name(s) + "' needs " + what + " in the model file");
}

Scalar sample_scalar(std::mt19937_64& rng, const ScalarAlgebra& alg) {
  if (auto els = alg.elements())
    return (*els)[std::uniform_int_distribution<std::size_t>(0, els->size() - 1)(rng)];
  const long num = std::uniform_int_distribution<long>(-4, 4)(rng);
  const long den = std::uniform_int_distribution<long>(1, 3)(rng);
  const std::string n = alg.name();
  if (n == "rational") {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  if (n == "complex-rational") {
    mpq_class re(num, den), im(std::uniform_int_distribution<long>(-2, 2)(rng), den);
    re.canonicalize();
    im.canonicalize();
    return ComplexRational{re, im};
  }
  return std::complex<double>(static_cast<double>(num) / den,
                              std::uniform_real_distribution<double>(-1, 1)(rng));
}

Matrix sample_matrix(std::mt19937_64& rng, const ScalarAlgebra& alg, const AlgebraPtr& ptr,
                     std::size_t r, std::size_t c) {
  Matrix m(ptr, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, sample_scalar(rng, alg));
  return m;
}

// Closed terms built from the model's signature: traces of identities,
// endomorphisms and round trips f ; g.
std::vector<TypedTerm> scalar_terms(const Signature& sig) {
  std::vector<TypedTerm> out;
  for (const auto& o : sig.objects()) out.push_back(trace_term(identity(ObjectExpr::base(o))));
  const auto& gens = sig.generators();
  for (const auto& f : gens) {
    const TypedTerm tf = generator_term(f);
    if (f.dom == f.cod && !f.dom.is_unit()) out.push_back(trace_term(tf));
    if (f.dom.is_unit() && f.cod.is_unit()) out.push_back(tf);
    for (const auto& g : gens)
      if (g.dom == f.cod && g.cod == f.dom && !f.dom.is_unit())
        out.push_back(trace_term(then(tf, generator_term(g))));
  }
  return out;
}

CheckReport scalars_suite(const ModelFile& file, const SuiteOptions& opt) {
  const Model& m = file.model;
  const auto& alg = m.algebra();
  std::mt19937_64 rng(opt.seed);
  CheckReport r;
  r.title = "scalars";
  if (auto els = alg->elements())
    r.notes.push_back(std::to_string(els->size()) + " scalars in " + alg->name());

  // Commutativity, symbolically and by evaluation.
  const auto terms = scalar_terms(m.signature());
  std::size_t sym_fail = 0, pairs = 0;
  std::optional<Witness> eval_witness;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      ++pairs;
      const TypedTerm st = compose(terms[i], terms[j]), ts = compose(terms[j], terms[i]);
      if (!equal_diagrams(st, ts, m.signature())) ++sym_fail;
      const Matrix a = eval(st, m), b = eval(ts, m);
      if (!(a == b) && !eval_witness)
        eval_witness = Witness{terms[i].term.str() + " then " + terms[j].term.str(), {}, {},
                               std::nullopt, a, b};
    }
  if (sym_fail == 0) r.pass("commutative/diagram", std::to_string(pairs) + " pairs of scalar terms");
  else r.fail("commutative/diagram", std::to_string(sym_fail) + " pairs with different keys");
  if (!eval_witness) r.pass("commutative/eval", std::to_string(pairs) + " pairs of scalar terms");
  else r.fail("commutative/eval", "s . t != t . s", eval_witness);
  std::optional<Witness> sample_witness;
  for (std::size_t k = 0; k < opt.samples && !sample_witness; ++k) {
    const Matrix s = Matrix::scalar(alg, sample_scalar(rng, *alg));
    const Matrix t = Matrix::scalar(alg, sample_scalar(rng, *alg));
    if (!(s * t == t * s)) sample_witness = Witness{"s t = t s", {}, {}, s, s * t, t * s};
  }
  if (!sample_witness)
    r.pass("commutative/samples", std::to_string(opt.samples) + " random pairs");
  else r.fail("commutative/samples", "s t != t s", sample_witness);

  // The four action laws on generators and random morphisms.
  std::vector<Matrix> maps;
  for (const auto& g : m.signature().generators()) maps.push_back(m.generator(g.name));
  for (std::size_t k = 0; k < 3; ++k) maps.push_back(sample_matrix(rng, *alg, alg, 2, 2));
  const Matrix one = Matrix::identity(alg, 1);
  struct Law {
    std::string name;
    bool ok = true;
  };
  std::vector<Law> laws{{"action/unit"}, {"action/compose-scalars"}, {"action/composition"},
                        {"action/tensor"}, {"action/natural"}};
  std::vector<std::optional<Witness>> wit(laws.size());
  auto record = [&](std::size_t i, const Matrix& l, const Matrix& rr, const std::string& what) {
    if (l == rr || !laws[i].ok) return;
    laws[i].ok = false;
    wit[i] = Witness{what, {}, {}, std::nullopt, l, rr};
  };
  for (std::size_t k = 0; k < opt.samples; ++k) {
    const Matrix s = Matrix::scalar(alg, sample_scalar(rng, *alg));
    const Matrix t = Matrix::scalar(alg, sample_scalar(rng, *alg));
    const Matrix& f = maps[k % maps.size()];
    const Matrix& g = maps[(k * 7 + 3) % maps.size()];
    record(0, scalar_action(one, f), f, "1 . f = f");
    record(1, scalar_action(s, scalar_action(t, f)), scalar_action(s * t, f),
           "s . (t . f) = (s t) . f");
    if (g.cols() == f.rows())
      record(2, scalar_action(s, g) * scalar_action(t, f), scalar_action(s * t, g * f),
             "(s . g)(t . f) = (s t) . (g f)");
    record(3, scalar_action(s, f).kron(scalar_action(t, g)), scalar_action(s * t, f.kron(g)),
           "(s . f) (x) (t . g) = (s t) . (f (x) g)");
    record(4, f * scalar_action(s, Matrix::identity(alg, f.cols())),
           scalar_action(s, Matrix::identity(alg, f.rows())) * f, "f s_A = s_B f");
  }
  for (std::size_t i = 0; i < laws.size(); ++i) {
    if (laws[i].ok) r.pass(laws[i].name, std::to_string(opt.samples) + " samples");
    else r.fail(laws[i].name, "law violated", wit[i]);
  }

  // Trace: identity gives the dimension; cyclic on composable generator pairs.
  for (const auto& o : m.signature().objects()) {
    const ObjectExpr a = ObjectExpr::base(o);
    r.expect_equal("trace/identity/" + o, eval(trace_term(identity(a)), m),
                   Matrix::scalar(alg, alg->from_int(static_cast<long>(m.dim(a)))),
                   "Tr(1) = dim");
  }
  for (const auto& f : m.signature().generators())
    for (const auto& g : m.signature().generators())
      if (g.dom == f.cod && g.cod == f.dom) {
        const Matrix mf = m.generator(f.name), mg = m.generator(g.name);
        r.expect_equal("trace/cyclic/" + f.name + "," + g.name,
                       Matrix::scalar(alg, model_trace(mg * mf)),
                       Matrix::scalar(alg, model_trace(mf * mg)), "Tr(g f) = Tr(f g)");
      }
  std::optional<Witness> trace_witness;
  for (std::size_t k = 0; k < opt.samples && !trace_witness; ++k) {
    const Matrix f = sample_matrix(rng, *alg, alg, 3, 3), g = sample_matrix(rng, *alg, alg, 3, 3);
    const Matrix gf = Matrix::scalar(alg, model_trace(g * f));
    const Matrix fg = Matrix::scalar(alg, model_trace(f * g));
    if (!(gf == fg)) trace_witness = Witness{"Tr(g f) = Tr(f g)", {}, {}, f, gf, fg};
  }
  if (!trace_witness) r.pass("trace/cyclic/samples", std::to_string(opt.samples) + " pairs");
  else r.fail("trace/cyclic/samples", "Tr(g f) != Tr(f g)", trace_witness);
  return r;
}

CheckReport dagger_suite(const ModelFile& f) {
  CheckReport r = dagger_compact_check(f.model);
  r.title = "dagger";
  return r;
}

const NaturalFamily& need_family(Suite s, const ModelFile& f, FamilyKind kind) {
  const NaturalFamily* fam = f.family_of_kind(kind);
  if (!fam) missing(s, std::string("a '") + family_kind_name(kind) + "' family");
  return *fam;
}

CheckReport cloning_suite(const ModelFile& f, const SuiteOptions& opt) {
  const Model& m = f.model;
  const NaturalFamily& delta = need_family(Suite::Cloning, f, FamilyKind::Diagonal);
  CheckReport r;
  r.title = "cloning";
  r.merge(check_cloning_axioms(m, delta, opt.budget), "axioms/");
  r.merge(delta_unit_lemma_check(m, delta), "");
  r.merge(idempotent_scalars_check(m, delta, opt.samples), "scalars/");
  for (const auto& o : m.signature().objects()) {
    const ObjectExpr a = ObjectExpr::base(o);
    r.merge(verify_cap_swap_proof(m, delta, unit_matrix(m, a), dual_object(a) * a),
            "cap-swap/" + o + "/");
  }
  return r;
}

CheckReport collapse_suite(const ModelFile& f, const SuiteOptions& opt) {
  const Model& m = f.model;
  CheckReport r;
  r.title = "collapse";
  const auto& objs = m.signature().objects();
  const std::string base = objs.empty() ? "A" : objs.front();
  r.merge(derivation_check(derive_collapse(base)), "derivation/");
  if (const NaturalFamily* delta = f.family_of_kind(FamilyKind::Diagonal)) {
    const CheckReport axioms = check_cloning_axioms(m, *delta, opt.budget);
    if (const auto* bad = axioms.first_failure()) {
      r.notes.push_back("model: '" + delta->name + "' fails the cloning axiom '" + bad->name +
                        "', so the collapse does not apply to this model");
    } else {
      std::vector<Matrix> endos;
      for (const auto& g : m.signature().generators())
        if (g.dom == g.cod) endos.push_back(m.generator(g.name));
      if (auto els = m.algebra()->elements(); els && endos.empty())
        for (const auto& s : *els) endos.push_back(Matrix::scalar(m.algebra(), s));
      for (std::size_t i = 0; i < endos.size(); ++i)
        r.merge(cloning_collapse_check(m, *delta, endos[i], opt.samples),
                "model/" + std::to_string(i) + "/");
    }
  }
  return r;
}

CheckReport deleting_suite(const ModelFile& f, const SuiteOptions& opt) {
  CheckReport r;
  r.title = "deleting";
  Signature sig = f.model.signature();
  bool parallel = false;
  const auto& gens = sig.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      parallel |= gens[i].dom == gens[j].dom && gens[i].cod == gens[j].cod;
  if (!parallel) {
    sig = Signature{};
    sig.add_object("A");
    sig.add_object("B");
    sig.add_generator({"f", ObjectExpr::base("A"), ObjectExpr::base("B")});
    sig.add_generator({"g", ObjectExpr::base("A"), ObjectExpr::base("B")});
    r.notes.push_back("no parallel generators in the model; using f, g : A -> B");
  }
  r.merge(derivation_check(deleting_collapse_check(sig)), "derivation/");
  for (const auto& fam : f.families) {
    if (fam.kind != FamilyKind::Deleting) continue;
    auto res = find_naturality_counterexample(f.model, fam, opt.budget, opt.seed);
    if (res.witness)
      r.fail("naturality/" + fam.name, "counterexample after " + std::to_string(res.trials) +
                                           " trials", std::move(res.witness));
    else
      r.pass("naturality/" + fam.name,
             "no counterexample within " + std::to_string(res.trials) + " trials");
  }
  return r;
}

CheckReport product_suite(const ModelFile& f, const SuiteOptions& opt) {
  CheckReport r = product_structure_check(f.model, need_family(Suite::Product, f, FamilyKind::Diagonal),
                                          need_family(Suite::Product, f, FamilyKind::ProjectionLeft),
                                          need_family(Suite::Product, f, FamilyKind::ProjectionRight),
                                          opt.budget);
  r.title = "product";
  return r;
}

CheckReport teleport_suite(const ModelFile& f) {
  if (f.teleport.empty()) missing(Suite::Teleport, "protocols.teleport branches");
  CheckReport r;
  r.title = "teleport";
  const ProtocolReport p = teleport_verify(f.model, f.teleport_object, f.teleport);
  r.merge(p.checks, "");
  for (const auto& b : p.branches)
    if (b.global_factor && !b.pass)
      r.notes.push_back("branch " + std::to_string(b.index) + ": global factor " +
                        f.model.algebra()->format(*b.global_factor));
  const auto& gens = f.model.signature().generators();
  for (const auto& a : gens)
    for (const auto& b : gens)
      if (a.cod == b.dom)
        r.merge(compositionality_lemma_check(f.model, f.model.generator(a.name),
                                             f.model.generator(b.name))
                    .checks,
                a.name + "," + b.name + "/");
  r.merge(derivation_check(derive_teleport(f.teleport_object)), "derivation/");
  return r;
}

bool has_inputs(Suite s, const ModelFile& f) {
  switch (s) {
    case Suite::Dagger:
      return f.model.algebra()->has_conj();
    case Suite::Cloning:
      return f.family_of_kind(FamilyKind::Diagonal) != nullptr;
    case Suite::Product:
      return f.family_of_kind(FamilyKind::Diagonal) &&
             f.family_of_kind(FamilyKind::ProjectionLeft) &&
             f.family_of_kind(FamilyKind::ProjectionRight);
    case Suite::Teleport:
      return !f.teleport.empty();
    default:
      return true;
  }
}

}  // namespace

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::Scalars: return "scalars";
    case Suite::Dagger: return "dagger";
    case Suite::Cloning: return "cloning";
    case Suite::Collapse: return "collapse";
    case Suite::Deleting: return "deleting";
    case Suite::Product: return "product";
    case Suite::Teleport: return "teleport";
    case Suite::All: return "all";
  }
  return "?";
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (Suite s : kAll) out.push_back(suite_name(s));
  out.push_back("all");
  return out;
}

Suite parse_suite(const std::string& text) {
  for (Suite s : kAll)
    if (text == suite_name(s)) return s;
  if (text == "all") return Suite::All;
  std::string list;
  for (const auto& n : suite_names()) list += (list.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::Usage, "unknown suite '" + text + "' (expected one of " + list + ")");
}

CheckReport derivation_check(const DerivationReport& r) {
  CheckReport out = r.conclusions;
  out.merge(replay_derivation(r), "");
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& s = r.steps[i];
    out.notes.push_back("step " + std::to_string(i + 1) + " [chain " + std::to_string(s.chain) +
                        "] " + s.label + ": apply " + s.equation.name + " (" +
                        s.equation.lhs.term.str() + " = " + s.equation.rhs.term.str() + ")");
  }
  for (const auto& eq : r.derived)
    out.notes.push_back("derived " + eq.name + ": " + eq.lhs.term.str() + " = " + eq.rhs.term.str());
  return out;
}

CheckReport run_suite(Suite s, const ModelFile& f, const SuiteOptions& opt) {
  switch (s) {
    case Suite::Scalars: return scalars_suite(f, opt);
    case Suite::Dagger: return dagger_suite(f);
    case Suite::Cloning: return cloning_suite(f, opt);
    case Suite::Collapse: return collapse_suite(f, opt);
    case Suite::Deleting: return deleting_suite(f, opt);
    case Suite::Product: return product_suite(f, opt);
    case Suite::Teleport: return teleport_suite(f);
    case Suite::All: break;
  }
  CheckReport all;
  all.title = "all";
  std::vector<std::pair<Suite, std::future<CheckReport>>> jobs;
  for (Suite x : kAll) {
    if (!has_inputs(x, f)) {
      all.notes.push_back(std::string("skipped ") + suite_name(x) + ": model has no input for it");
      continue;
    }
    jobs.emplace_back(x, std::async(std::launch::async, [x, &f, &opt] { return run_suite(x, f, opt); }));
  }
  for (auto& [x, job] : jobs) all.merge(job.get(), std::string(suite_name(x)) + ":");
  return all;
}

ModelFile demo_teleport_model() {
  ModelSpec spec;
  spec.kind = ModelKind::FdVec;
  spec.algebra = complex_rational_algebra();
  spec.objects = {{"A", 2}};
  ModelFile f{build_model(spec), {}, pauli_branches(spec.algebra), "A", 1e-9};
  return f;
}

}  // namespace ccat
