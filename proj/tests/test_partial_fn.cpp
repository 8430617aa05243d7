#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "sqcert/errors.hpp"
#include "sqcert/partial_fn.hpp"

using namespace sqcert;

TEST_CASE("assignment is idempotent and detects conflicts") {
  PartialFn f(100);
  CHECK(f.assign(1, Rational(1)));
  CHECK_FALSE(f.assign(1, Rational(1)));
  f.assign(2, Rational(2));
  CHECK_THROWS_AS(f.assign(2, Rational(1)), ConflictError);
  CHECK_THROWS_AS(PartialFn(10).assign(1, Rational(2)), ConflictError);
}

TEST_CASE("closure multiplies and divides") {
  PartialFn a(100);
  a.assign(2, Rational(2));
  a.assign(3, Rational(3));
  CHECK(a.lookup(6) == Rational(6));

  PartialFn b(100);
  b.assign(2, Rational(2));
  b.assign(25, Rational(25));
  CHECK(b.lookup(50) == Rational(50));

  PartialFn c(100);
  c.assign(50, Rational(50));
  c.assign(2, Rational(2));
  CHECK(c.lookup(25) == Rational(25));

  // Inconsistent triple.
  PartialFn d(100);
  d.assign(2, Rational(2));
  d.assign(3, Rational(3));
  CHECK_THROWS_AS(d.assign(6, Rational(5)), ConflictError);
}

TEST_CASE("division needs a nonzero divisor") {
  // 0 * f(7) = 14 has no solution, but only a complete triple is checked.
  PartialFn f(100);
  f.assign(2, Rational(0));
  CHECK_NOTHROW(f.assign(14, Rational(14)));
  CHECK_FALSE(f.lookup(7).has_value());
  CHECK_THROWS_AS(f.assign(7, Rational(7)), ConflictError);

  PartialFn g(100);
  g.assign(2, Rational(0));
  g.assign(14, Rational(0));
  CHECK_FALSE(g.lookup(7).has_value());
}

TEST_CASE("non-coprime products are never inferred") {
  PartialFn f(100);
  f.assign(2, Rational(2));
  CHECK_FALSE(f.contains(4));
  f.assign(3, Rational(3));
  f.assign(4, Rational(4));
  CHECK(f.lookup(12) == Rational(12));
  CHECK_FALSE(f.contains(8));
}

TEST_CASE("the horizon bounds forward products only") {
  PartialFn f(10);
  f.assign(3, Rational(3));
  f.assign(5, Rational(5));
  CHECK_FALSE(f.contains(15));
  f.assign(30, Rational(30));  // divisions still fire
  CHECK(f.lookup(6) == Rational(6));
  CHECK(f.lookup(2) == Rational(2));
  CHECK(f.lookup(10) == Rational(10));
  f.set_product_horizon(100);
  f.closure();
  CHECK(f.lookup(15) == Rational(15));
}

TEST_CASE("inferences reach the sink with provenance") {
  std::vector<Inference> seen;
  PartialFn f(100, [&](const Inference& i) {
    seen.push_back(i);
    return StepRef(100 + seen.size());
  });
  f.assign(2, Rational(2), 7);
  f.assign(3, Rational(3), 8);
  REQUIRE(seen.size() == 1);
  CHECK(seen[0].kind == Inference::Kind::Multiplicativity);
  CHECK(seen[0].target == 6);
  CHECK(seen[0].first == 2);
  CHECK(seen[0].second == 3);
  CHECK(seen[0].first_ref == 7);
  CHECK(seen[0].second_ref == 8);
  CHECK(f.provenance(6) == 101);
}

TEST_CASE("unitary divisors") {
  CHECK(unitary_divisors(12) == std::vector<std::uint64_t>{1, 3, 4, 12});
  CHECK(unitary_divisors(1) == std::vector<std::uint64_t>{1});
  CHECK(unitary_divisors(30) ==
        std::vector<std::uint64_t>{1, 2, 3, 5, 6, 10, 15, 30});
}

TEST_CASE("closure is confluent") {
  constexpr std::uint64_t kLimit = 60;
  const unsigned seed = 20240611;
  MESSAGE("seed " << seed);
  std::mt19937_64 rng(seed);
  for (int round = 0; round < 40; ++round) {
    // A random multiplicative function from prime-power values.
    std::map<std::uint64_t, Rational> pp;
    std::vector<Rational> full(kLimit + 1);
    full[1] = Rational(1);
    for (std::uint64_t n = 2; n <= kLimit; ++n) {
      std::uint64_t p = 2;
      while (n % p) ++p;
      std::uint64_t q = 1;
      std::uint64_t m = n;
      while (m % p == 0) {
        m /= p;
        q *= p;
      }
      if (m == 1) {
        const std::int64_t num = static_cast<std::int64_t>(rng() % 7) - 2;
        const std::int64_t den = static_cast<std::int64_t>(rng() % 3) + 1;
        full[n] = Rational(num, den);
      } else {
        full[n] = full[q] * full[m];
      }
    }
    std::vector<std::uint64_t> keys;
    for (std::uint64_t n = 2; n <= kLimit; ++n) {
      if (rng() % 3 == 0) keys.push_back(n);
    }
    std::vector<std::pair<std::uint64_t, Rational>> reference;
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(keys.begin(), keys.end(), rng);
      PartialFn f(kLimit);
      f.assign(1, Rational(1));
      for (auto k : keys) f.assign(k, full[k]);
      for (const auto& [n, v] : f.entries()) REQUIRE(v == full[n]);
      if (perm == 0) {
        reference = f.entries();
      } else {
        REQUIRE(f.entries() == reference);
      }
    }
  }
}

TEST_CASE("table rendering") {
  PartialFn f(10);
  f.assign(1, Rational(1));
  f.assign(2, Rational(2));
  CHECK(f.to_table() == "1 = 1/1\n2 = 2/1\n");
}
