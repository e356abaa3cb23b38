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

#include "report.hpp"

#include <algorithm>
#include <sstream>

namespace ccat {

bool CheckReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
}

const CheckEntry* CheckReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

const CheckEntry* CheckReport::first_failure() const {
  for (const auto& e : entries)
    if (!e.pass) return &e;
  return nullptr;
}

void CheckReport::pass(std::string name, std::string detail) {
  entries.push_back({std::move(name), true, std::move(detail), std::nullopt});
}

void CheckReport::fail(std::string name, std::string detail, std::optional<Witness> w) {
  entries.push_back({std::move(name), false, std::move(detail), std::move(w)});
}

bool CheckReport::expect_equal(const std::string& name, const Matrix& lhs, const Matrix& rhs,
                               std::string description, ObjectExpr dom, ObjectExpr cod,
                               std::optional<Matrix> morphism) {
  if (lhs == rhs) {
    pass(name, std::move(description));
    return true;
  }
  Witness w{description, std::move(dom), std::move(cod), std::move(morphism), lhs, rhs};
  fail(name, description.empty() ? "sides differ" : description, std::move(w));
  return false;
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (auto e : other.entries) {
    e.name = prefix + e.name;
    entries.push_back(std::move(e));
  }
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

nlohmann::ordered_json to_json(const Matrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.algebra()->format(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json j = {{"name", e.name}, {"outcome", e.pass ? "pass" : "fail"}};
    if (!e.detail.empty()) j["detail"] = e.detail;
    if (e.witness) {
      const auto& w = *e.witness;
      nlohmann::ordered_json wj = {{"description", w.description},
                           {"dom", w.dom.str()},
                           {"cod", w.cod.str()},
                           {"lhs", to_json(w.lhs)},
                           {"rhs", to_json(w.rhs)}};
      if (w.morphism) wj["morphism"] = to_json(*w.morphism);
      j["witness"] = std::move(wj);
    }
    checks.push_back(std::move(j));
  }
  return {{"title", r.title}, {"passed", r.passed()}, {"checks", std::move(checks)},
          {"notes", r.notes}};
}

namespace {

std::string indent(const std::string& block, const std::string& pad) {
  std::istringstream in(block);
  std::string line, out;
  while (std::getline(in, line)) out += pad + line + "\n";
  return out;
}

}  // namespace

std::string to_text(const CheckReport& r) {
  std::size_t width = 0;
  for (const auto& e : r.entries) width = std::max(width, e.name.size());
  std::ostringstream out;
  out << "== " << r.title << " ==\n";
  for (const auto& e : r.entries) {
    out << "  " << e.name << std::string(width - e.name.size() + 2, ' ')
        << (e.pass ? "ok  " : "FAIL") << (e.detail.empty() ? "" : "  " + e.detail) << "\n";
    if (e.witness) {
      const auto& w = *e.witness;
      out << "      witness " << w.description << " : " << w.dom.str() << " -> " << w.cod.str()
          << "\n";
      if (w.morphism) out << indent(w.morphism->str(), "        ");
      out << "      lhs:\n" << indent(w.lhs.str(), "        ");
      out << "      rhs:\n" << indent(w.rhs.str(), "        ");
    }
  }
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  out << "  => " << (r.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace ccat
