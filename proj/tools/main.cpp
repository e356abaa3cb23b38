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


// Command-line front end over the C interface.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccat/ccat.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

struct Config {
  std::string format = "text";
  std::string model;
  double tolerance = -1;
  std::size_t budget = 64;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
  std::string out;
};

struct Owned {
  char* s = nullptr;
  ~Owned() { ccat_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

// Raised by command bodies after a library call fails.
struct Failure {
  int exit_code;
  json error;
};

bool usage_like(ccat_status s) {
  switch (s) {
    case CCAT_ERR_LEX:
    case CCAT_ERR_PARSE:
    case CCAT_ERR_RESOLVE:
    case CCAT_ERR_USAGE:
    case CCAT_ERR_MODEL:
    case CCAT_ERR_INVALID_ARGUMENT:
      return true;
    default:
      return false;
  }
}

// Errors while loading inputs are usage errors whatever their code; errors
// in checks on well-formed inputs count as failed checks.
void check(ccat_status s, bool loading = false) {
  if (s == CCAT_OK) return;
  json err = json::parse(ccat_last_error_json(), nullptr, false);
  if (err.is_discarded()) err = {{"code", ccat_status_name(s)}, {"message", ccat_last_error_message()}};
  throw Failure{loading || usage_like(s) ? kUsage : kFail, std::move(err)};
}

[[noreturn]] void usage(const std::string& msg) {
  throw Failure{kUsage, {{"code", "Usage"}, {"message", msg}}};
}

std::string resolve_model(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty()) usage("--model is required");
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv("CCAT_MODEL_DIR")) {
    for (const std::string& cand : {path, path + ".json"}) {
      const fs::path p = fs::path(dir) / cand;
      if (fs::exists(p)) return p.string();
    }
  }
  return path;
}

struct Program {
  ccat_program* p = nullptr;
  ~Program() { ccat_program_free(p); }
};
struct Model {
  ccat_model* m = nullptr;
  ~Model() { ccat_model_free(m); }
};
struct Report {
  ccat_report* r = nullptr;
  ~Report() { ccat_report_free(r); }
};

void load_program(const std::string& file, Program& prog) {
  check(ccat_program_load(file.c_str(), &prog.p));
}

void load_model(const Config& cfg, const Program* prog, Model& model) {
  const std::string path = resolve_model(cfg.model);
  check(ccat_model_load(path.c_str(), prog ? prog->p : nullptr, cfg.tolerance, &model.m), true);
}

struct Outcome {
  int exit_code = kPass;
  json body = json::object();
  std::string text;
};

Outcome cmd_check(const Config&, const std::string& file) {
  Program prog;
  load_program(file, prog);
  Owned j;
  check(ccat_program_check_json(prog.p, &j.s));
  Outcome o;
  o.body = json::parse(j.str());
  std::ostringstream t;
  for (const auto& term : o.body["terms"])
    t << "term " << term["name"].get<std::string>() << " : " << term["dom"].get<std::string>()
      << " -> " << term["cod"].get<std::string>() << "\n";
  for (const auto& eq : o.body["equations"])
    t << "eq " << eq["name"].get<std::string>() << " : " << eq["dom"].get<std::string>() << " -> "
      << eq["cod"].get<std::string>()
      << (eq["diagram_equal"].get<bool>() ? "  (sides diagram-equal)" : "  (axiom)") << "\n";
  t << file << ": " << o.body["terms"].size() << " terms, " << o.body["equations"].size()
    << " equations typecheck\n";
  o.text = t.str();
  return o;
}

Outcome cmd_equal(const Config&, const std::string& file, const std::string& a,
                  const std::string& b) {
  Program prog;
  load_program(file, prog);
  int eq = 0;
  check(ccat_term_equal(prog.p, a.c_str(), b.c_str(), &eq));
  Outcome o;
  o.exit_code = eq ? kPass : kFail;
  o.body = {{"lhs", a}, {"rhs", b}, {"equal", eq != 0}};
  o.text = std::string(eq ? "equal" : "not equal") + ": " + a + "  vs  " + b + "\n";
  return o;
}

Outcome cmd_eval(const Config& cfg, const std::string& file, const std::string& term) {
  Program prog;
  load_program(file, prog);
  Model model;
  load_model(cfg, &prog, model);
  Owned j;
  // A term the model cannot interpret is an input mismatch.
  check(ccat_eval_json(prog.p, model.m, term.c_str(), &j.s), true);
  Outcome o;
  o.body = json::parse(j.str());
  std::ostringstream t;
  t << term << " : " << o.body["dom"].get<std::string>() << " -> "
    << o.body["cod"].get<std::string>() << "  over " << o.body["scalars"].get<std::string>()
    << "\n"
    << o.body["text"].get<std::string>();
  for (const auto& l : o.body["loops"])
    t << "loop " << l["loop"].get<std::string>() << " = " << l["value"].get<std::string>() << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_render(const Config& cfg, const std::string& file, const std::string& term) {
  Program prog;
  load_program(file, prog);
  Owned dot;
  check(ccat_term_render_dot(prog.p, term.c_str(), &dot.s));
  Outcome o;
  o.body = {{"term", term}};
  if (cfg.out.empty()) {
    o.body["dot"] = dot.str();
    o.text = dot.str();
  } else {
    std::ofstream f(cfg.out);
    if (!(f << dot.str())) usage("cannot write " + cfg.out);
    o.body["output"] = cfg.out;
    o.text = "wrote " + cfg.out + "\n";
  }
  return o;
}

Outcome report_outcome(const Report& rep) {
  Owned j, t;
  check(ccat_report_json(rep.r, &j.s));
  check(ccat_report_text(rep.r, &t.s));
  Outcome o;
  o.exit_code = ccat_report_passed(rep.r) ? kPass : kFail;
  o.body = {{"report", json::parse(j.str())}};
  o.text = t.str();
  return o;
}

ccat_verify_options options(const Config& cfg) {
  return ccat_verify_options{cfg.budget, cfg.samples, cfg.seed};
}

Outcome cmd_verify(const Config& cfg, const std::string& suite) {
  Model model;
  load_model(cfg, nullptr, model);
  Report rep;
  const auto opt = options(cfg);
  check(ccat_verify(model.m, suite.c_str(), &opt, &rep.r));
  Outcome o = report_outcome(rep);
  o.body["suite"] = suite;
  return o;
}

Outcome cmd_demo(const Config& cfg, const std::string& which) {
  if (which != "teleport") usage("unknown demo '" + which + "' (expected teleport)");
  Model model;
  check(ccat_model_demo_teleport(&model.m), true);
  Report rep;
  const auto opt = options(cfg);
  check(ccat_verify(model.m, "teleport", &opt, &rep.r));
  Outcome o = report_outcome(rep);
  o.body["demo"] = which;
  return o;
}

// Shows the offending line, from the file or the command-line expression,
// with the span underlined.
std::string underline(const std::string& file, const json& err) {
  if (!err.contains("line")) return "";
  const int at = err["line"].get<int>();
  std::string line;
  bool found = false;
  if (err.contains("expression")) {
    std::istringstream in(err["expression"].get<std::string>());
    for (int i = 0; i < at && std::getline(in, line); ++i) found = i + 1 == at;
  } else if (!file.empty()) {
    std::ifstream in(file);
    for (int i = 0; i < at && std::getline(in, line); ++i) found = i + 1 == at;
  }
  if (!found) return "";
  const int col = err["column"].get<int>();
  int end = err.value("end_line", 0) == at ? err.value("end_column", col + 1)
                                           : static_cast<int>(line.size()) + 1;
  if (end <= col) end = col + 1;
  return "  | " + line + "\n  | " + std::string(col - 1, ' ') + std::string(end - col, '^') + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ccat: terms, string diagrams and models of compact closed categories"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "Comparison tolerance for float scalars")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--budget", cfg.budget, "Naturality search budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--samples", cfg.samples, "Random samples per sampled law")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("-m,--model", cfg.model, "Model JSON file (also looked up in $CCAT_MODEL_DIR)");

  std::string file, t1, t2, suite, demo;
  auto* c_check = app.add_subcommand("check", "Parse and typecheck a source file");
  c_check->add_option("FILE", file)->required();
  auto* c_equal = app.add_subcommand("equal", "Decide equality of two terms as string diagrams");
  c_equal->add_option("FILE", file)->required();
  c_equal->add_option("LHS", t1)->required();
  c_equal->add_option("RHS", t2)->required();
  auto* c_eval = app.add_subcommand("eval", "Evaluate a term in a model");
  c_eval->add_option("FILE", file)->required();
  c_eval->add_option("TERM", t1)->required();
  auto* c_render = app.add_subcommand("render", "Write the string diagram of a term as dot");
  c_render->add_option("FILE", file)->required();
  c_render->add_option("TERM", t1)->required();
  c_render->add_option("-o,--output", cfg.out, "Output path (stdout if omitted)");
  auto* c_verify = app.add_subcommand("verify", "Run a check suite against a model");
  c_verify->add_option("SUITE", suite,
                       "scalars, dagger, cloning, collapse, deleting, product, teleport or all")
      ->required();
  auto* c_demo = app.add_subcommand("demo", "Run a built-in demonstration");
  c_demo->add_option("NAME", demo, "teleport")->required();
  for (auto* sub : {c_check, c_equal, c_eval, c_render, c_verify, c_demo}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Outcome o;
  try {
    if (command == "check") o = cmd_check(cfg, file);
    else if (command == "equal") o = cmd_equal(cfg, file, t1, t2);
    else if (command == "eval") o = cmd_eval(cfg, file, t1);
    else if (command == "render") o = cmd_render(cfg, file, t1);
    else if (command == "verify") o = cmd_verify(cfg, suite);
    else o = cmd_demo(cfg, demo);
  } catch (const Failure& f) {
    if (cfg.format == "json") {
      json out = {{"command", command}, {"exit_code", f.exit_code}, {"error", f.error}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cerr << "error[" << f.error.value("code", "Error") << "]: "
                << f.error.value("message", "") << "\n"
                << underline(command == "verify" ? "" : file, f.error);
      if (f.error.contains("expected"))
        std::cerr << "  expected one of: " << f.error["expected"].dump() << "\n";
    }
    return f.exit_code;
  } catch (const std::exception& e) {
    if (cfg.format == "json")
      std::cout << json{{"command", command},
                        {"exit_code", kFail},
                        {"error", {{"code", "Internal"}, {"message", e.what()}}}}
                       .dump(2)
                << "\n";
    else std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }

  if (cfg.format == "json") {
    json out = {{"command", command}, {"exit_code", o.exit_code}};
    for (auto& [k, v] : o.body.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << o.text;
  }
  return o.exit_code;
}
