#include <doctest.h>

#include <stdexcept>

#include "sqcert/polynomial.hpp"

using namespace sqcert;

namespace {
Polynomial poly(std::initializer_list<std::int64_t> ascending) {
  std::vector<Rational> c;
  for (auto v : ascending) c.emplace_back(v);
  return Polynomial(c);
}
std::vector<Rational> ints(std::initializer_list<std::int64_t> v) {
  return {v.begin(), v.end()};
}
}  // namespace

TEST_CASE("rational roots of small polynomials") {
  // x^2 - 3x + 2
  CHECK(poly({2, -3, 1}).rational_roots() == ints({1, 2}));
  // x^2 - 25
  CHECK(poly({-25, 0, 1}).rational_roots() == ints({-5, 5}));
  // 2x^2 - x: roots 0 and 1/2
  CHECK(poly({0, -1, 2}).rational_roots() ==
        std::vector<Rational>{Rational(0), Rational(1, 2)});
  CHECK(poly({1, 0, 1}).rational_roots().empty());
  CHECK(poly({7}).rational_roots().empty());
  CHECK_THROWS_AS(Polynomial().rational_roots(), std::domain_error);
}

TEST_CASE("the f(2) equation before and after clearing denominators") {
  // 1 + x + x^2 = 3(x + 10/x) read literally: x^3 - 2x^2 + x - 30.
  CHECK(poly({-30, 1, -2, 1}).rational_roots().empty());
  // With f(4) = x^2 substituted: 1 + x^2 + x^4 = 3(x + 10/x).
  CHECK(poly({-30, 1, -3, 1, 0, 1}).rational_roots() == ints({2}));
}

TEST_CASE("rational function arithmetic keeps division denominators") {
  auto x = RationalFunction::variable();
  auto f7 = (RationalFunction::constant(10) + x * x) / x;  // (10 + x^2) / x
  CHECK(f7.evaluate(Rational(2)) == Rational(7));
  CHECK_FALSE(f7.evaluate(Rational(0)).has_value());
  auto diff = RationalFunction::constant(3) * f7 - (x * x * x * x + x * x +
                                                    RationalFunction::constant(1));
  CHECK(diff.evaluate(Rational(2)) == Rational(0));
}

TEST_CASE("positive divisors") {
  std::vector<mpz_class> d = positive_divisors(mpz_class(-12));
  std::vector<mpz_class> want{1, 2, 3, 4, 6, 12};
  CHECK(d == want);
}
