#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sqcert/rational.hpp"

namespace sqcert {

/// Univariate polynomial with exact rational coefficients, stored in
/// ascending powers with no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);

  static Polynomial constant(const Rational& c);
  static Polynomial variable();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t power) const;

  Rational evaluate(const Rational& x) const;

  /// Distinct rational roots in ascending order. The zero polynomial has no
  /// finite root set; calling this on it throws std::domain_error. Throws
  /// RootSearchLimit when a coefficient is too large to factor.
  std::vector<Rational> rational_roots() const;

  /// Primitive integer coefficient vector proportional to this polynomial,
  /// leading coefficient positive.
  std::vector<mpz_class> primitive_integer_coefficients() const;

  std::string to_string(const std::string& var = "x") const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) {
    return a *= b;
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient of two polynomials with a nonzero denominator. Never reduced:
/// the denominator keeps every factor introduced by a division so that its
/// zeros mark exactly the points where the expression is undefined.
struct RationalFunction {
  Polynomial num = Polynomial::constant(0);
  Polynomial den = Polynomial::constant(1);

  static RationalFunction constant(const Rational& c);
  static RationalFunction variable();

  bool is_constant() const { return num.is_constant() && den.is_constant(); }
  int degree() const { return std::max(num.degree(), den.degree()); }
  /// nullopt where the denominator vanishes.
  std::optional<Rational> evaluate(const Rational& x) const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  /// Requires a divisor that is not identically zero.
  RationalFunction operator/(const RationalFunction& o) const;
};

/// Positive divisors of |n| in ascending order, by trial division.
/// Throws RootSearchLimit when |n| exceeds the trial-division bound.
std::vector<mpz_class> positive_divisors(const mpz_class& n);

}  // namespace sqcert
