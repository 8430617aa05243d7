#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "oracle.hpp"
#include "sqcert/three_squares.hpp"

using namespace sqcert;

namespace {
std::vector<oracle::Triple> as_tuples(const std::vector<Representation>& reps) {
  std::vector<oracle::Triple> out;
  for (const auto& r : reps) out.emplace_back(r.a, r.b, r.c);
  return out;
}
}  // namespace

TEST_CASE("isqrt is exact near perfect squares") {
  for (std::uint64_t r : {0ull, 1ull, 2ull, 3037000499ull, 4294967295ull}) {
    CHECK(isqrt(r * r) == r);
    if (r > 0) CHECK(isqrt(r * r - 1) == r - 1);
  }
  CHECK(isqrt(~0ull) == 4294967295ull);
  CHECK(is_perfect_square(625));
  CHECK_FALSE(is_perfect_square(626));
}

TEST_CASE("classification examples") {
  CHECK(std::holds_alternative<NonvanishingRepresentable>(classify(3)));
  CHECK(classify(7) == ThreeSquaresClass{NotRepresentable{0, 0}});
  CHECK(classify(13) == ThreeSquaresClass{TwoSquareOnly{2, 3}});
  CHECK(classify(16) == ThreeSquaresClass{PureSquareOnly{4}});
  CHECK(classify(100) == ThreeSquaresClass{TwoSquareOnly{6, 8}});
  CHECK(classify(25) == ThreeSquaresClass{TwoSquareOnly{3, 4}});
  CHECK(classify(28) == ThreeSquaresClass{NotRepresentable{1, 0}});
  CHECK(describe(classify(7)) == "not representable: 4^0*(8*0+7)");
  CHECK(describe(classify(17)) == "nonvanishing representable: (2,2,3)");
  CHECK_THROWS(classify(0));
}

TEST_CASE("least nonvanishing witnesses") {
  CHECK(least_nonvanishing(17) == Representation{2, 2, 3});
  CHECK(least_nonvanishing(46) == Representation{1, 3, 6});
  CHECK(least_nonvanishing(625) == Representation{9, 12, 20});
  CHECK_FALSE(least_nonvanishing(16).has_value());
}

TEST_CASE("representation examples") {
  CHECK(as_tuples(representations(27, true)) ==
        std::vector<oracle::Triple>{{1, 1, 5}, {3, 3, 3}});
  CHECK(representations(1, true).empty());
  const auto r125 = representations(125, true);
  CHECK(std::find(r125.begin(), r125.end(), Representation{3, 4, 10}) !=
        r125.end());
  CHECK(as_tuples(representations(26, true)) ==
        std::vector<oracle::Triple>{{1, 3, 4}});
  CHECK(as_tuples(representations(16, false)) ==
        std::vector<oracle::Triple>{{0, 0, 4}});
}

TEST_CASE("representations agree with brute force") {
  SquareTable table(2000);
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    for (bool nv : {false, true}) {
      REQUIRE(as_tuples(representations(n, nv, table)) ==
              oracle::triples(n, nv));
    }
  }
}

TEST_CASE("classification agrees with brute force and Legendre") {
  SquareTable table(100000);
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    const auto cls = classify(n, table);
    const bool excluded = oracle::legendre_excluded(n);
    REQUIRE(std::holds_alternative<NotRepresentable>(cls) == excluded);
    REQUIRE(legendre_form(n).has_value() == excluded);
    if (n <= 3000) {
      const auto all = oracle::triples(n, false);
      REQUIRE(all.empty() == excluded);
      const auto nv = oracle::triples(n, true);
      if (!nv.empty()) {
        const auto& [a, b, c] = nv.front();
        REQUIRE(cls == ThreeSquaresClass{
                           NonvanishingRepresentable{{a, b, c}}});
      }
    }
  }
}

TEST_CASE("hurwitz exceptions") {
  CHECK(verify_hurwitz(100) == std::vector<std::uint64_t>{1, 4, 16, 25, 64, 100});
  CHECK(verify_hurwitz(3) == std::vector<std::uint64_t>{1});
  const auto h = verify_hurwitz(10000);
  CHECK(std::find(h.begin(), h.end(), 9) == h.end());
  CHECK(h == hurwitz_exceptions(10000));
}

TEST_CASE("five power representations") {
  CHECK(five_power_representation(3) == Representation{3, 4, 10});
  CHECK(five_power_representation(5) == Representation{15, 20, 50});
  CHECK(five_power_representation(4) == Representation{9, 12, 20});
  for (unsigned s = 3; s <= 20; ++s) {
    std::uint64_t p = 1;
    for (unsigned i = 0; i < s; ++i) p *= 5;
    const auto r = five_power_representation(s);
    CHECK(r.value() == p);
    CHECK(r.nonvanishing());
  }
  CHECK_THROWS_AS(five_power_representation(2), std::invalid_argument);
}
