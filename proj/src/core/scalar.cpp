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

#include "scalar.hpp"

#include <cmath>

#include "error.hpp"

namespace ccat {

Scalar ScalarAlgebra::from_int(long n) const {
  Scalar acc = zero();
  for (long i = 0; i < n; ++i) acc = add(acc, one());
  return acc;
}

namespace {

class BoolAlgebra final : public ScalarAlgebra {
 public:
  std::string name() const override { return "bool"; }
  Scalar zero() const override { return false; }
  Scalar one() const override { return true; }
  Scalar add(const Scalar& a, const Scalar& b) const override {
    return std::get<bool>(a) || std::get<bool>(b);
  }
  Scalar mul(const Scalar& a, const Scalar& b) const override {
    return std::get<bool>(a) && std::get<bool>(b);
  }
  bool equal(const Scalar& a, const Scalar& b) const override {
    return std::get<bool>(a) == std::get<bool>(b);
  }
  std::string format(const Scalar& a) const override { return std::get<bool>(a) ? "1" : "0"; }
  Scalar from_int(long n) const override { return n != 0; }
  std::optional<std::vector<Scalar>> elements() const override {
    return std::vector<Scalar>{false, true};
  }
};

class RationalAlgebra final : public ScalarAlgebra {
 public:
  std::string name() const override { return "rational"; }
  Scalar zero() const override { return mpq_class(0); }
  Scalar one() const override { return mpq_class(1); }
  Scalar add(const Scalar& a, const Scalar& b) const override {
    return mpq_class(std::get<mpq_class>(a) + std::get<mpq_class>(b));
  }
  Scalar mul(const Scalar& a, const Scalar& b) const override {
    return mpq_class(std::get<mpq_class>(a) * std::get<mpq_class>(b));
  }
  bool equal(const Scalar& a, const Scalar& b) const override {
    return std::get<mpq_class>(a) == std::get<mpq_class>(b);
  }
  std::string format(const Scalar& a) const override { return std::get<mpq_class>(a).get_str(); }
  std::optional<Scalar> inverse(const Scalar& a) const override {
    const auto& q = std::get<mpq_class>(a);
    if (q == 0) return std::nullopt;
    return mpq_class(1 / q);
  }
  Scalar negate(const Scalar& a) const override { return mpq_class(-std::get<mpq_class>(a)); }
  Scalar from_int(long n) const override { return mpq_class(n); }
};

class ComplexRationalAlgebra final : public ScalarAlgebra {
 public:
  std::string name() const override { return "complex-rational"; }
  Scalar zero() const override { return ComplexRational{0, 0}; }
  Scalar one() const override { return ComplexRational{1, 0}; }
  Scalar add(const Scalar& a, const Scalar& b) const override {
    const auto& x = std::get<ComplexRational>(a);
    const auto& y = std::get<ComplexRational>(b);
    return ComplexRational{x.re + y.re, x.im + y.im};
  }
  Scalar mul(const Scalar& a, const Scalar& b) const override {
    const auto& x = std::get<ComplexRational>(a);
    const auto& y = std::get<ComplexRational>(b);
    return ComplexRational{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  bool equal(const Scalar& a, const Scalar& b) const override {
    const auto& x = std::get<ComplexRational>(a);
    const auto& y = std::get<ComplexRational>(b);
    return x.re == y.re && x.im == y.im;
  }
  std::string format(const Scalar& a) const override {
    const auto& x = std::get<ComplexRational>(a);
    if (x.im == 0) return x.re.get_str();
    if (x.re == 0) return x.im.get_str() + "i";
    return x.re.get_str() + (x.im > 0 ? "+" : "") + x.im.get_str() + "i";
  }
  Scalar conj(const Scalar& a) const override {
    const auto& x = std::get<ComplexRational>(a);
    return ComplexRational{x.re, -x.im};
  }
  std::optional<Scalar> inverse(const Scalar& a) const override {
    const auto& x = std::get<ComplexRational>(a);
    const mpq_class norm = x.re * x.re + x.im * x.im;
    if (norm == 0) return std::nullopt;
    return ComplexRational{x.re / norm, -x.im / norm};
  }
  Scalar negate(const Scalar& a) const override {
    const auto& x = std::get<ComplexRational>(a);
    return ComplexRational{-x.re, -x.im};
  }
  Scalar from_int(long n) const override { return ComplexRational{n, 0}; }
};

class ComplexFloatAlgebra final : public ScalarAlgebra {
 public:
  explicit ComplexFloatAlgebra(double tol) : tol_(tol) {}
  std::string name() const override { return "complex-float"; }
  Scalar zero() const override { return std::complex<double>(0); }
  Scalar one() const override { return std::complex<double>(1); }
  Scalar add(const Scalar& a, const Scalar& b) const override {
    return std::get<std::complex<double>>(a) + std::get<std::complex<double>>(b);
  }
  Scalar mul(const Scalar& a, const Scalar& b) const override {
    return std::get<std::complex<double>>(a) * std::get<std::complex<double>>(b);
  }
  bool equal(const Scalar& a, const Scalar& b) const override {
    const auto x = std::get<std::complex<double>>(a);
    const auto y = std::get<std::complex<double>>(b);
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) <= tol_ * scale;
  }
  std::string format(const Scalar& a) const override {
    const auto x = std::get<std::complex<double>>(a);
    char buf[64];
    if (x.imag() == 0)
      std::snprintf(buf, sizeof buf, "%.12g", x.real());
    else
      std::snprintf(buf, sizeof buf, "%.12g%+.12gi", x.real(), x.imag());
    return buf;
  }
  Scalar conj(const Scalar& a) const override { return std::conj(std::get<std::complex<double>>(a)); }
  std::optional<Scalar> inverse(const Scalar& a) const override {
    const auto x = std::get<std::complex<double>>(a);
    if (std::abs(x) <= tol_) return std::nullopt;
    return 1.0 / x;
  }
  Scalar negate(const Scalar& a) const override { return -std::get<std::complex<double>>(a); }
  Scalar from_int(long n) const override { return std::complex<double>(static_cast<double>(n)); }

 private:
  double tol_;
};

class SemilatticeAlgebra final : public ScalarAlgebra {
 public:
  explicit SemilatticeAlgebra(std::vector<std::vector<int>> meet) : meet_(std::move(meet)) {
    const int n = static_cast<int>(meet_.size());
    auto bad = [](const std::string& why) {
      throw Error(ErrorCode::NotASemilattice, "meet table: " + why);
    };
    if (n == 0) bad("empty carrier");
    for (const auto& row : meet_) {
      if (static_cast<int>(row.size()) != n) bad("table is not square");
      for (int v : row)
        if (v < 0 || v >= n) bad("entry out of range");
    }
    for (int a = 0; a < n; ++a) {
      if (meet_[a][a] != a) bad("not idempotent at " + std::to_string(a));
      for (int b = 0; b < n; ++b) {
        if (meet_[a][b] != meet_[b][a]) bad("not commutative");
        for (int c = 0; c < n; ++c)
          if (meet_[meet_[a][b]][c] != meet_[a][meet_[b][c]]) bad("not associative");
      }
    }
    top_ = bottom_ = -1;
    for (int t = 0; t < n && top_ < 0; ++t) {
      bool unit = true;
      for (int a = 0; a < n; ++a) unit = unit && meet_[t][a] == a;
      if (unit) top_ = t;
    }
    if (top_ < 0) bad("no unit (top) element");
    bottom_ = 0;
    for (int a = 0; a < n; ++a) bottom_ = meet_[bottom_][a];
    // join(a, b) = meet of all common upper bounds; exists because top exists
    join_.assign(n, std::vector<int>(n, top_));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int j = top_;
        for (int u = 0; u < n; ++u)
          if (meet_[a][u] == a && meet_[b][u] == b) j = meet_[j][u];
        join_[a][b] = j;
      }
  }
  std::string name() const override { return "semilattice"; }
  Scalar zero() const override { return LatticeElem{bottom_}; }
  Scalar one() const override { return LatticeElem{top_}; }
  Scalar add(const Scalar& a, const Scalar& b) const override {
    return LatticeElem{join_[std::get<LatticeElem>(a).value][std::get<LatticeElem>(b).value]};
  }
  Scalar mul(const Scalar& a, const Scalar& b) const override {
    return LatticeElem{meet_[std::get<LatticeElem>(a).value][std::get<LatticeElem>(b).value]};
  }
  bool equal(const Scalar& a, const Scalar& b) const override {
    return std::get<LatticeElem>(a).value == std::get<LatticeElem>(b).value;
  }
  std::string format(const Scalar& a) const override {
    return "s" + std::to_string(std::get<LatticeElem>(a).value);
  }
  bool has_conj() const override { return false; }
  Scalar from_int(long n) const override { return n == 0 ? zero() : one(); }
  std::optional<std::vector<Scalar>> elements() const override {
    std::vector<Scalar> out;
    for (int a = 0; a < static_cast<int>(meet_.size()); ++a) out.push_back(LatticeElem{a});
    return out;
  }

 private:
  std::vector<std::vector<int>> meet_;
  std::vector<std::vector<int>> join_;
  int top_ = 0;
  int bottom_ = 0;
};

}  // namespace

AlgebraPtr boolean_algebra() {
  static const AlgebraPtr a = std::make_shared<BoolAlgebra>();
  return a;
}
AlgebraPtr rational_algebra() {
  static const AlgebraPtr a = std::make_shared<RationalAlgebra>();
  return a;
}
AlgebraPtr complex_rational_algebra() {
  static const AlgebraPtr a = std::make_shared<ComplexRationalAlgebra>();
  return a;
}
AlgebraPtr complex_float_algebra(double tolerance) {
  return std::make_shared<ComplexFloatAlgebra>(tolerance);
}
AlgebraPtr semilattice_algebra(std::vector<std::vector<int>> meet) {
  return std::make_shared<SemilatticeAlgebra>(std::move(meet));
}

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw Error(ErrorCode::ModelError, "not a rational number: '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::ModelError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace ccat
