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

#pragma once

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ccat {

struct ComplexRational {
  mpq_class re;
  mpq_class im;
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Element of a finite meet-semilattice, by index into its meet table.
struct LatticeElem {
  int value = 0;
  friend bool operator==(const LatticeElem& a, const LatticeElem& b) { return a.value == b.value; }
};

using Scalar = std::variant<bool, mpq_class, ComplexRational, std::complex<double>, LatticeElem>;

/// Commutative semiring with an optional involution.
class ScalarAlgebra {
 public:
  virtual ~ScalarAlgebra() = default;

  virtual std::string name() const = 0;
  virtual Scalar zero() const = 0;
  virtual Scalar one() const = 0;
  virtual Scalar add(const Scalar& a, const Scalar& b) const = 0;
  virtual Scalar mul(const Scalar& a, const Scalar& b) const = 0;
  virtual bool equal(const Scalar& a, const Scalar& b) const = 0;
  virtual std::string format(const Scalar& a) const = 0;

  virtual bool has_conj() const { return true; }
  virtual Scalar conj(const Scalar& a) const { return a; }
  /// Multiplicative inverse, when the algebra is a field and a is nonzero.
  virtual std::optional<Scalar> inverse(const Scalar&) const { return std::nullopt; }
  virtual Scalar negate(const Scalar& a) const { return a; }
  /// Image of an integer under the unique semiring map from the naturals.
  virtual Scalar from_int(long n) const;
  /// All elements, when the carrier is finite.
  virtual std::optional<std::vector<Scalar>> elements() const { return std::nullopt; }
  bool is_zero(const Scalar& a) const { return equal(a, zero()); }
};

using AlgebraPtr = std::shared_ptr<const ScalarAlgebra>;

AlgebraPtr boolean_algebra();
AlgebraPtr rational_algebra();
AlgebraPtr complex_rational_algebra();
AlgebraPtr complex_float_algebra(double tolerance = 1e-9);

/// Meet-semilattice with top given by its meet table. Multiplication is meet,
/// the unit is the top element; addition is the induced join with bottom as
/// zero. Throws NotASemilattice if the table is not associative, commutative
/// and idempotent with a unit.
AlgebraPtr semilattice_algebra(std::vector<std::vector<int>> meet);

/// Parses "p/q" or an integer string into a rational.
mpq_class parse_rational(const std::string& text);

}  // namespace ccat
