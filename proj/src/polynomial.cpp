#include "sqcert/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "sqcert/errors.hpp"

namespace sqcert {

namespace {

// Trial division up to 10^7 keeps a single factorization well under a second.
const mpz_class kDivisorBound("100000000000000");

}  // namespace

Polynomial::Polynomial(std::vector<Rational> ascending)
    : coeffs_(std::move(ascending)) {
  trim();
}

Polynomial Polynomial::constant(const Rational& c) {
  return Polynomial(std::vector<Rational>{c});
}

Polynomial Polynomial::variable() {
  return Polynomial(std::vector<Rational>{Rational(0), Rational(1)});
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::coefficient(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

std::vector<mpz_class> Polynomial::primitive_integer_coefficients() const {
  if (is_zero()) return {};
  mpz_class lcm_den = 1;
  for (const auto& c : coeffs_) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
            c.denominator().get_mpz_t());
  }
  std::vector<mpz_class> ints;
  ints.reserve(coeffs_.size());
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_class v = c.numerator() * (lcm_den / c.denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (ints.back() < 0) g = -g;
  for (auto& v : ints) v /= g;
  return ints;
}

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  mpz_class m = abs(n);
  if (m == 0) throw std::domain_error("divisors of zero");
  if (m > kDivisorBound) {
    throw RootSearchLimit("coefficient " + m.get_str() +
                          " too large for divisor enumeration");
  }
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= m; ++d) {
    if (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t()) != 0) {
      small.push_back(d);
      mpz_class q = m / d;
      if (q != d) large.push_back(std::move(q));
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<Rational> Polynomial::rational_roots() const {
  if (is_zero()) throw std::domain_error("zero polynomial has every root");
  std::vector<mpz_class> c = primitive_integer_coefficients();
  std::vector<Rational> roots;
  std::size_t shift = 0;
  while (shift < c.size() && c[shift] == 0) ++shift;
  if (shift > 0) roots.emplace_back(0);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
  if (c.size() > 1) {
    // p/q in lowest terms is a root only if p | c0 and q | c_d.
    const auto ps = positive_divisors(c.front());
    const auto qs = positive_divisors(c.back());
    const std::size_t d = c.size() - 1;
    for (const auto& q : qs) {
      for (const auto& p0 : ps) {
        if (gcd(p0, q) != 1) continue;
        for (int s : {1, -1}) {
          const mpz_class p = p0 * s;
          // sum c_i p^i q^(d-i)
          mpz_class acc = 0;
          mpz_class ppow = 1;
          std::vector<mpz_class> qpow(d + 1);
          qpow[0] = 1;
          for (std::size_t i = 1; i <= d; ++i) qpow[i] = qpow[i - 1] * q;
          for (std::size_t i = 0; i <= d; ++i) {
            acc += c[i] * ppow * qpow[d - i];
            ppow *= p;
          }
          if (acc == 0) roots.emplace_back(p, q);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c.is_zero()) continue;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Rational(1);
    if (i == 0 || !unit) os << mag.to_display();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

RationalFunction RationalFunction::constant(const Rational& c) {
  return {Polynomial::constant(c), Polynomial::constant(1)};
}

RationalFunction RationalFunction::variable() {
  return {Polynomial::variable(), Polynomial::constant(1)};
}

std::optional<Rational> RationalFunction::evaluate(const Rational& x) const {
  const Rational d = den.evaluate(x);
  if (d.is_zero()) return std::nullopt;
  return num.evaluate(x) / d;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (den == o.den) return {num + o.num, den};
  return {num * o.den + o.num * den, den * o.den};
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  if (den == o.den) return {num - o.num, den};
  return {num * o.den - o.num * den, den * o.den};
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return {num * o.num, den * o.den};
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.num.is_zero()) throw std::domain_error("division by zero function");
  if (o.num.is_constant() && o.den.is_constant()) {
    // Constant divisor: fold into the numerator, no new undefined points.
    const Rational k = o.den.coefficient(0) / o.num.coefficient(0);
    return {num * Polynomial::constant(k), den};
  }
  return {num * o.den, den * o.num};
}

}  // namespace sqcert
