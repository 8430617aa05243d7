#include "sqcert/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace sqcert {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    digits.remove_prefix(1);
  }
  if (!is_digits(digits)) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  std::string buf(s);
  if (buf.front() == '+') buf.erase(0, 1);
  return mpz_class(buf, 10);
}

}  // namespace

Rational::Rational(std::int64_t n) {
  value_ = mpq_class(mpz_class(static_cast<long>(n)));
}

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(mpz_class(static_cast<long>(num)),
               mpz_class(static_cast<long>(den))) {}

Rational::Rational(mpq_class q) : value_(std::move(q)) {
  value_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text), mpz_class(1));
  }
  const mpz_class num = parse_integer(text.substr(0, slash));
  const mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(num, den);
}

bool Rational::parse_canonical(std::string_view text, Rational& out) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return false;
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!num.empty() && num.front() == '-') num.remove_prefix(1);
  if (!is_digits(num) || !is_digits(den)) return false;
  try {
    Rational r = parse(text);
    if (r.to_string() != text) return false;
    out = std::move(r);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_display() const {
  if (is_integer()) return value_.get_num().get_str();
  return to_string();
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= o.value_;
  return *this;
}

Rational square(const Rational& r) { return r * r; }

}  // namespace sqcert
