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

// Minimal recursive-descent recognizer for the dot language.
#pragma once

#include <cctype>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ccat::testing {

struct DotGraph {
  bool ok = false;
  std::string error;
  std::set<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> edge_labels;
};

class DotParser {
 public:
  explicit DotParser(std::string text) : s_(std::move(text)) {}

  DotGraph parse() {
    try {
      ws();
      if (peek_word() == "strict") word();
      const std::string kind = word();
      if (kind != "digraph" && kind != "graph") fail("graph kind");
      directed_ = kind == "digraph";
      ws();
      if (cur() != '{') id();
      expect('{');
      stmt_list();
      expect('}');
      ws();
      if (pos_ != s_.size()) fail("trailing input");
      g_.ok = true;
    } catch (const std::string& e) {
      g_.error = e;
    }
    return g_;
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;
  bool directed_ = true;
  DotGraph g_;

  [[noreturn]] void fail(const std::string& what) {
    throw "expected " + what + " at offset " + std::to_string(pos_);
  }
  char cur() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    ws();
    if (cur() != c) fail(std::string("'") + c + "'");
    ++pos_;
  }
  static bool id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
  }
  std::string peek_word() {
    std::size_t p = pos_;
    std::string w;
    while (p < s_.size() && id_char(s_[p])) w += s_[p++];
    return w;
  }
  std::string word() {
    ws();
    std::string w = peek_word();
    if (w.empty()) fail("identifier");
    pos_ += w.size();
    return w;
  }
  std::string id() {
    ws();
    if (cur() == '"') {
      ++pos_;
      std::string v;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
        v += s_[pos_++];
      }
      if (cur() != '"') fail("closing quote");
      ++pos_;
      return v;
    }
    if (cur() == '-' || std::isdigit(static_cast<unsigned char>(cur()))) {
      std::string v;
      while (cur() == '-' || cur() == '.' || std::isdigit(static_cast<unsigned char>(cur()))) v += s_[pos_++];
      return v;
    }
    return word();
  }
  std::vector<std::pair<std::string, std::string>> attr_list() {
    std::vector<std::pair<std::string, std::string>> out;
    ws();
    while (cur() == '[') {
      ++pos_;
      ws();
      while (cur() != ']') {
        const std::string k = id();
        expect('=');
        out.push_back({k, id()});
        ws();
        if (cur() == ',' || cur() == ';') ++pos_;
        ws();
      }
      ++pos_;
      ws();
    }
    return out;
  }
  void stmt_list() {
    for (;;) {
      ws();
      if (cur() == '}' || cur() == '\0') return;
      stmt();
      ws();
      if (cur() == ';') ++pos_;
    }
  }
  void stmt() {
    const std::string w = peek_word();
    if (w == "subgraph") {
      word();
      ws();
      if (cur() != '{') id();
      expect('{');
      stmt_list();
      expect('}');
      return;
    }
    if (w == "graph" || w == "node" || w == "edge") {
      word();
      attr_list();
      return;
    }
    std::string a = id();
    ws();
    if (cur() == '=') {
      ++pos_;
      id();
      return;
    }
    bool edge = false;
    for (;;) {
      ws();
      if (s_.compare(pos_, 2, directed_ ? "->" : "--") != 0) break;
      pos_ += 2;
      const std::string b = id();
      g_.edges.push_back({a, b});
      edge = true;
      a = b;
    }
    const auto attrs = attr_list();
    if (edge) {
      std::string label;
      for (const auto& [k, v] : attrs)
        if (k == "label") label = v;
      g_.edge_labels.push_back(label);
    } else {
      g_.nodes.insert(a);
    }
  }
};

inline DotGraph parse_dot(const std::string& text) { return DotParser(text).parse(); }

}  // namespace ccat::testing
