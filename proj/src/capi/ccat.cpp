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


#include "ccat/ccat.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "diagram.hpp"
#include "dsl.hpp"
#include "model.hpp"
#include "model_file.hpp"
#include "suites.hpp"

struct ccat_program {
  ccat::Program program;
  ccat::SourceFile source;
};

struct ccat_model {
  ccat::ModelFile file;
};

struct ccat_report {
  ccat::CheckReport report;
};

namespace {

struct LastError {
  std::string message;
  std::string json = "null";
  int line = 0;
  int col = 0;
};

thread_local LastError last_error;

ccat_status to_status(ccat::ErrorCode c) {
  return static_cast<ccat_status>(static_cast<int>(c) + 1);
}

void clear_error() { last_error = LastError{}; }

// A failure while elaborating a command-line expression rather than a file.
struct ExprFailure {
  ccat::Error error;
  std::string expr;
};

ccat::TypedTerm elaborate(const char* expr, const ccat_program* p) {
  try {
    return ccat::elaborate_expr(expr, p->program);
  } catch (const ccat::Error& e) {
    throw ExprFailure{e, expr};
  }
}

ccat_status record(ccat_status s, const std::string& msg, const ccat::SourceSpan& span = {},
                   const std::vector<std::string>& expected = {},
                   const ccat::TermPath& path = {}, const std::string& expr = {}) {
  last_error.message = msg;
  last_error.line = span.line;
  last_error.col = span.col;
  nlohmann::ordered_json j = {{"code", ccat_status_name(s)}, {"message", msg}};
  if (span.valid()) {
    j["line"] = span.line;
    j["column"] = span.col;
    j["end_line"] = span.end_line;
    j["end_column"] = span.end_col;
  }
  if (!expected.empty()) j["expected"] = expected;
  if (!path.empty()) j["path"] = path;
  if (!expr.empty()) j["expression"] = expr;
  last_error.json = j.dump();
  return s;
}

template <class F>
ccat_status guarded(F&& body) {
  clear_error();
  try {
    body();
    return CCAT_OK;
  } catch (const ExprFailure& f) {
    const auto& e = f.error;
    return record(to_status(e.code()), "in '" + f.expr + "': " + e.what(), e.span(), e.expected(),
                  e.path(), f.expr);
  } catch (const ccat::Error& e) {
    return record(to_status(e.code()), e.what(), e.span(), e.expected(), e.path());
  } catch (const nlohmann::json::exception& e) {
    return record(CCAT_ERR_MODEL, e.what());
  } catch (const std::bad_alloc&) {
    return record(CCAT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(CCAT_ERR_INTERNAL, e.what());
  }
}

ccat_status invalid(const char* what) {
  clear_error();
  return record(CCAT_ERR_INVALID_ARGUMENT, std::string("null argument: ") + what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const std::string& path, ccat::ErrorCode code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ccat::Error(code, path + ": cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ccat::ModelFile parse_model(const std::string& text, const ccat_program* p, double tolerance) {
  const ccat::Signature* sig = p ? &p->program.signature : nullptr;
  if (tolerance < 0) return ccat::parse_model_file(text, sig);
  auto root = nlohmann::ordered_json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object()) return ccat::parse_model_file(text, sig);
  root["tolerance"] = tolerance;
  return ccat::parse_model_file(root.dump(), sig);
}

}  // namespace

extern "C" {

const char* ccat_version(void) { return "1.0.0"; }

const char* ccat_status_name(ccat_status s) {
  switch (s) {
    case CCAT_OK: return "Ok";
    case CCAT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case CCAT_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (s > CCAT_OK && s < CCAT_ERR_INVALID_ARGUMENT)
    return ccat::error_code_name(static_cast<ccat::ErrorCode>(static_cast<int>(s) - 1));
  return "Unknown";
}

const char* ccat_last_error_message(void) { return last_error.message.c_str(); }
int ccat_last_error_line(void) { return last_error.line; }
int ccat_last_error_column(void) { return last_error.col; }
const char* ccat_last_error_json(void) { return last_error.json.c_str(); }

void ccat_string_free(char* s) { std::free(s); }

ccat_status ccat_program_parse(const char* text, ccat_program** out) {
  if (!text || !out) return invalid("text/out");
  *out = nullptr;
  return guarded([&] {
    auto p = std::make_unique<ccat_program>();
    p->source = ccat::parse_source(text);
    p->program = ccat::elaborate(p->source);
    *out = p.release();
  });
}

ccat_status ccat_program_load(const char* path, ccat_program** out) {
  if (!path || !out) return invalid("path/out");
  *out = nullptr;
  return guarded([&] {
    const std::string text = read_file(path, ccat::ErrorCode::Usage);
    auto p = std::make_unique<ccat_program>();
    try {
      p->source = ccat::parse_source(text);
      p->program = ccat::elaborate(p->source);
    } catch (const ccat::Error& e) {
      throw e.prefixed(std::string(path) + ":");
    }
    *out = p.release();
  });
}

void ccat_program_free(ccat_program* p) { delete p; }

size_t ccat_program_term_count(const ccat_program* p) { return p ? p->program.terms.size() : 0; }

const char* ccat_program_term_name(const ccat_program* p, size_t index) {
  if (!p || index >= p->program.terms.size()) return nullptr;
  return p->program.terms[index].first.c_str();
}

ccat_status ccat_program_check_json(const ccat_program* p, char** json) {
  if (!p || !json) return invalid("program/json");
  *json = nullptr;
  return guarded([&] {
    const auto& prog = p->program;
    nlohmann::ordered_json j;
    j["objects"] = prog.signature.objects();
    j["dagger"] = prog.signature.dagger_closed();
    auto gens = nlohmann::ordered_json::array();
    for (const auto& g : prog.signature.generators())
      gens.push_back({{"name", g.name}, {"dom", g.dom.str()}, {"cod", g.cod.str()}});
    j["generators"] = std::move(gens);
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [name, t] : prog.terms)
      terms.push_back({{"name", name}, {"dom", t.dom.str()}, {"cod", t.cod.str()}});
    j["terms"] = std::move(terms);
    auto eqs = nlohmann::ordered_json::array();
    for (const auto& e : prog.equations)
      eqs.push_back({{"name", e.name},
                     {"dom", e.lhs.dom.str()},
                     {"cod", e.lhs.cod.str()},
                     {"diagram_equal", ccat::equal_diagrams(e.lhs, e.rhs, prog.signature)}});
    j["equations"] = std::move(eqs);
    *json = dup(j.dump(2));
  });
}

ccat_status ccat_program_print(const ccat_program* p, char** text) {
  if (!p || !text) return invalid("program/text");
  *text = nullptr;
  return guarded([&] { *text = dup(ccat::print_source(p->source)); });
}

ccat_status ccat_term_type(const ccat_program* p, const char* expr, char** dom, char** cod) {
  if (!p || !expr || !dom || !cod) return invalid("program/expr/dom/cod");
  *dom = *cod = nullptr;
  return guarded([&] {
    const auto t = elaborate(expr, p);
    *dom = dup(t.dom.str());
    *cod = dup(t.cod.str());
  });
}

ccat_status ccat_term_equal(const ccat_program* p, const char* lhs, const char* rhs, int* equal) {
  if (!p || !lhs || !rhs || !equal) return invalid("program/lhs/rhs/equal");
  return guarded([&] {
    const auto a = elaborate(lhs, p);
    const auto b = elaborate(rhs, p);
    if (a.dom != b.dom || a.cod != b.cod)
      throw ccat::Error(ccat::ErrorCode::TypeMismatch,
                        std::string("'") + lhs + "' : " + a.dom.str() + " -> " + a.cod.str() +
                            " and '" + rhs + "' : " + b.dom.str() + " -> " + b.cod.str() +
                            " have different types");
    *equal = ccat::equal_diagrams(a, b, p->program.signature) ? 1 : 0;
  });
}

ccat_status ccat_term_render_dot(const ccat_program* p, const char* expr, char** dot) {
  if (!p || !expr || !dot) return invalid("program/expr/dot");
  *dot = nullptr;
  return guarded([&] {
    const auto t = elaborate(expr, p);
    *dot = dup(ccat::render_dot(ccat::to_diagram(t, p->program.signature)));
  });
}

ccat_status ccat_model_load(const char* path, const ccat_program* program, double tolerance,
                            ccat_model** out) {
  if (!path || !out) return invalid("path/out");
  *out = nullptr;
  return guarded([&] {
    const std::string text = read_file(path, ccat::ErrorCode::ModelError);
    try {
      *out = new ccat_model{parse_model(text, program, tolerance)};
    } catch (const ccat::Error& e) {
      throw e.prefixed(std::string(path) + ": ");
    }
  });
}

ccat_status ccat_model_parse(const char* json, const ccat_program* program, double tolerance,
                             ccat_model** out) {
  if (!json || !out) return invalid("json/out");
  *out = nullptr;
  return guarded([&] { *out = new ccat_model{parse_model(json, program, tolerance)}; });
}

ccat_status ccat_model_demo_teleport(ccat_model** out) {
  if (!out) return invalid("out");
  *out = nullptr;
  return guarded([&] { *out = new ccat_model{ccat::demo_teleport_model()}; });
}

void ccat_model_free(ccat_model* m) { delete m; }

ccat_status ccat_model_json(const ccat_model* m, char** json) {
  if (!m || !json) return invalid("model/json");
  *json = nullptr;
  return guarded([&] { *json = dup(ccat::model_file_json(m->file).dump(2)); });
}

ccat_status ccat_eval_json(const ccat_program* p, const ccat_model* m, const char* expr,
                           char** json) {
  if (!p || !m || !expr || !json) return invalid("program/model/expr/json");
  *json = nullptr;
  return guarded([&] {
    const auto t = elaborate(expr, p);
    const auto rep = ccat::eval_report(t, m->file.model, p->program.signature);
    const auto& alg = *m->file.model.algebra();
    nlohmann::ordered_json j;
    j["term"] = expr;
    j["dom"] = t.dom.str();
    j["cod"] = t.cod.str();
    j["scalars"] = alg.name();
    j["matrix"] = ccat::to_json(rep.result);
    j["text"] = rep.result.str();
    auto loops = nlohmann::ordered_json::array();
    for (const auto& l : rep.ledger)
      loops.push_back({{"loop", l.label.str()}, {"value", alg.format(l.value)}});
    j["loops"] = std::move(loops);
    *json = dup(j.dump(2));
  });
}

ccat_status ccat_verify(const ccat_model* m, const char* suite, const ccat_verify_options* options,
                        ccat_report** out) {
  if (!m || !suite || !out) return invalid("model/suite/out");
  *out = nullptr;
  return guarded([&] {
    ccat::SuiteOptions opt;
    if (options) {
      if (options->budget) opt.budget = options->budget;
      if (options->samples) opt.samples = options->samples;
      opt.seed = options->seed;
    }
    *out = new ccat_report{ccat::run_suite(ccat::parse_suite(suite), m->file, opt)};
  });
}

int ccat_report_passed(const ccat_report* r) { return r && r->report.passed() ? 1 : 0; }

size_t ccat_report_entry_count(const ccat_report* r) { return r ? r->report.entries.size() : 0; }

ccat_status ccat_report_json(const ccat_report* r, char** json) {
  if (!r || !json) return invalid("report/json");
  *json = nullptr;
  return guarded([&] { *json = dup(ccat::to_json(r->report).dump(2)); });
}

ccat_status ccat_report_text(const ccat_report* r, char** text) {
  if (!r || !text) return invalid("report/text");
  *text = nullptr;
  return guarded([&] { *text = dup(ccat::to_text(r->report)); });
}

void ccat_report_free(ccat_report* r) { delete r; }

}  // extern "C"
