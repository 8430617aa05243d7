#include <doctest.h>

#include "sqcert/certificate.hpp"
#include "sqcert/errors.hpp"
#include "sqcert/replay.hpp"

using namespace sqcert;

namespace {

const DerivationStep* first_value_step(const std::vector<DerivationStep>& steps,
                                       std::uint64_t target) {
  for (const auto& s : steps) {
    if (s.target == target && s.value) return &s;
  }
  return nullptr;
}

std::vector<Rational> ints(std::initializer_list<std::int64_t> v) {
  return {v.begin(), v.end()};
}

ReplayEngine& warmed(ReplayEngine& e, std::uint64_t upto) {
  e.bootstrap();
  for (std::uint64_t n = kBootstrapLimit + 1; n < upto; ++n) e.induction_step(n);
  return e;
}

}  // namespace

TEST_CASE("bootstrap pins the small table") {
  const BootstrapResult b = bootstrap();
  for (std::int64_t n = 1; n <= 15; ++n) CHECK(b.store.lookup(n) == Rational(n));
  CHECK(b.store.lookup(25) == Rational(25));
  CHECK(b.state.f2_root_sets == std::vector<std::vector<Rational>>{
                                    ints({1, 2}), ints({2})});
  CHECK(b.state.f2_candidates == ints({2}));
  CHECK(b.state.f5_root_sets == std::vector<std::vector<Rational>>{
                                    ints({-5, 5}), ints({1, 5})});
  CHECK(b.state.f5_candidates == ints({5}));
  CHECK_FALSE(PartialFn(10).lookup(2).has_value());
}

TEST_CASE("bootstrap justifications") {
  const BootstrapResult b = bootstrap();
  const auto* s7 = first_value_step(b.steps, 7);
  REQUIRE(s7);
  CHECK(std::get<DivisionStep>(s7->kind) == DivisionStep{14, 2});

  const auto* s8 = first_value_step(b.steps, 8);
  REQUIRE(s8);
  CHECK(std::get<DivisionStep>(s8->kind) == DivisionStep{24, 3});

  const auto* s13 = first_value_step(b.steps, 13);
  REQUIRE(s13);
  CHECK(std::get<DivisionStep>(s13->kind) == DivisionStep{26, 2});
  const auto* s26 = first_value_step(b.steps, 26);
  REQUIRE(s26);
  CHECK(std::get<FunctionalEquationStep>(s26->kind) ==
        FunctionalEquationStep{1, 3, 4});

  // The second f(2) root set runs through f(14) and f(21).
  bool through_21 = false;
  for (const auto& s : b.steps) {
    if (const auto* rs = std::get_if<RootSetStep>(&s.kind); rs && s.target == 2) {
      for (const auto& c : rs->chain)
        if (top_slot(c) == 21) through_21 = true;
    }
  }
  CHECK(through_21);
}

TEST_CASE("induction branch examples") {
  ReplayEngine e(200);
  warmed(e, 16);

  auto steps = e.induction_step(16);
  CHECK(e.last_branch() == Branch::PureSquare);
  REQUIRE(!steps.empty());
  CHECK(std::get<FunctionalEquationStep>(steps.front().kind) ==
        FunctionalEquationStep{4, 4, 4});
  CHECK(steps.front().target == 48);
  CHECK(e.store().lookup(16) == Rational(16));

  steps = e.induction_step(17);
  CHECK(e.last_branch() == Branch::Direct);
  CHECK(std::get<FunctionalEquationStep>(steps.front().kind) ==
        FunctionalEquationStep{2, 2, 3});

  for (std::uint64_t n = 18; n < 23; ++n) e.induction_step(n);
  steps = e.induction_step(23);
  CHECK(e.last_branch() == Branch::NotRepresentable);
  CHECK(steps.front().target == 46);
  CHECK(std::get<FunctionalEquationStep>(steps.front().kind) ==
        FunctionalEquationStep{1, 3, 6});
  CHECK(e.store().lookup(23) == Rational(23));

  for (std::uint64_t n = 24; n < 100; ++n) e.induction_step(n);
  steps = e.induction_step(100);
  CHECK(e.last_branch() == Branch::TwoSquare);
  bool split = false;
  for (const auto& s : steps) {
    if (const auto* m = std::get_if<MultiplicativityStep>(&s.kind)) {
      if (s.target == 100) {
        CHECK(*m == MultiplicativityStep{4, 25});
        split = true;
      }
    }
  }
  CHECK(split);
  CHECK(e.histogram().two_square_five_power >= 1);
}

TEST_CASE("five-power split beyond 5^2") {
  ReplayEngine e(1000);
  warmed(e, 250);
  const auto steps = e.induction_step(250);  // 5^3 * 2, only 5^2+15^2 etc.
  CHECK(e.store().lookup(250) == Rational(250));
  (void)steps;
}

TEST_CASE("branch choice follows the classification") {
  ReplayEngine e(5000);
  e.bootstrap();
  for (std::uint64_t n = kBootstrapLimit + 1; n <= 5000; ++n) {
    e.induction_step(n);
    const auto cls = classify(n);
    Branch want = Branch::Direct;
    if (std::holds_alternative<NotRepresentable>(cls)) want = Branch::NotRepresentable;
    if (std::holds_alternative<TwoSquareOnly>(cls)) want = Branch::TwoSquare;
    if (std::holds_alternative<PureSquareOnly>(cls)) want = Branch::PureSquare;
    REQUIRE(e.last_branch() == want);
  }
  CHECK(e.histogram().total() == 5000 - kBootstrapLimit);
}

TEST_CASE("induction requires the hypothesis") {
  ReplayEngine e(100);
  e.bootstrap();
  CHECK_THROWS_AS(e.induction_step(5000), HypothesisGap);
  CHECK_THROWS_AS(e.induction_step(10), std::invalid_argument);
}

TEST_CASE("verify_up_to") {
  const VerifyResult one = verify_up_to(1);
  CHECK(one.store.size() == 1);
  CHECK(one.certificate.steps.size() == 1);

  const VerifyResult r = verify_up_to(1000);
  for (std::int64_t n = 1; n <= 1000; ++n) REQUIRE(r.store.lookup(n) == Rational(n));
  CHECK(r.summary.histogram.total() == 1000 - kBootstrapLimit);
  CHECK(check(r.certificate).valid);
  CHECK_THROWS(verify_up_to(0));
}
