#include <doctest.h>

#include <stdexcept>

#include "sqcert/rational.hpp"

using sqcert::Rational;

TEST_CASE("rational normalizes and prints canonically") {
  CHECK(Rational(6, -4).to_string() == "-3/2");
  CHECK(Rational(5).to_string() == "5/1");
  CHECK(Rational(5).to_display() == "5");
  CHECK(Rational(0, 7).to_string() == "0/1");
}

TEST_CASE("rational arithmetic is exact") {
  Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(2) + Rational(10, 2) == Rational(7));
  CHECK(square(Rational(-5)) == Rational(25));
  CHECK(Rational(3, 4) / Rational(3, 8) == Rational(2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational(-1, 2) < Rational(1, 3));
}

TEST_CASE("parse and canonical parse") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  Rational r;
  CHECK(Rational::parse_canonical("50/1", r));
  CHECK(r == Rational(50));
  CHECK_FALSE(Rational::parse_canonical("50", r));
  CHECK_FALSE(Rational::parse_canonical("100/2", r));
  CHECK_FALSE(Rational::parse_canonical("+5/1", r));
  CHECK_FALSE(Rational::parse_canonical("5/-1", r));
  CHECK_FALSE(Rational::parse_canonical("05/1", r));
  CHECK_FALSE(Rational::parse_canonical("", r));
}

TEST_CASE("large values stay exact") {
  Rational big = Rational::parse("123456789012345678901234567890");
  CHECK((big * big / big) == big);
}
