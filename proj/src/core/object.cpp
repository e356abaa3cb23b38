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

#include "object.hpp"

#include <algorithm>
#include <cctype>

#include "error.hpp"

namespace ccat {

ObjectExpr ObjectExpr::operator*(const ObjectExpr& rhs) const {
  std::vector<Factor> out = factors_;
  out.insert(out.end(), rhs.factors_.begin(), rhs.factors_.end());
  return ObjectExpr(std::move(out));
}

ObjectExpr ObjectExpr::slice(std::size_t from, std::size_t count) const {
  return ObjectExpr(std::vector<Factor>(factors_.begin() + from,
                                        factors_.begin() + from + count));
}

bool ObjectExpr::ends_with(const ObjectExpr& suffix) const {
  if (suffix.size() > size()) return false;
  return std::equal(suffix.factors_.begin(), suffix.factors_.end(),
                    factors_.end() - suffix.size());
}

std::string ObjectExpr::str() const {
  if (factors_.empty()) return "I";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += " * ";
    out += factors_[i].str();
  }
  return out;
}

std::string ObjectExpr::source_str() const {
  if (factors_.empty()) return "I";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += " * ";
    out += factors_[i].dual ? "dual(" + factors_[i].base + ")" : factors_[i].base;
  }
  return out;
}

ObjectExpr dual_object(const ObjectExpr& a) {
  std::vector<Factor> out;
  out.reserve(a.size());
  for (const auto& f : a.factors()) out.push_back(f.dualized());
  return ObjectExpr(std::move(out));
}

namespace {

class WordParser {
 public:
  explicit WordParser(const std::string& text) : s_(text) {}

  ObjectExpr parse() {
    ObjectExpr w = word();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "in object word '" + s_ + "': " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected an object name");
    return s_.substr(start, pos_ - start);
  }
  // A '*' is a postfix dual when followed by '*', ')' or the end of input.
  bool postfix_star() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '*') return false;
    std::size_t q = pos_ + 1;
    while (q < s_.size() && std::isspace(static_cast<unsigned char>(s_[q]))) ++q;
    return q >= s_.size() || s_[q] == '*' || s_[q] == ')';
  }
  ObjectExpr factor() {
    const std::string name = ident();
    if (name == "I") return ObjectExpr{};
    if (name == "dual") {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '(') fail("expected '(' after dual");
      ++pos_;
      ObjectExpr inner = word();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return dual_object(inner);
    }
    ObjectExpr f = ObjectExpr::base(name);
    while (postfix_star()) {
      ++pos_;
      f = dual_object(f);
    }
    return f;
  }
  ObjectExpr word() {
    ObjectExpr w = factor();
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '*') return w;
      ++pos_;
      w = w * factor();
    }
  }
};

}  // namespace

ObjectExpr parse_object(const std::string& text) { return WordParser(text).parse(); }

}  // namespace ccat
