#include "sqcert/replay.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sqcert/errors.hpp"

namespace sqcert {

namespace {

Rational integer(std::uint64_t n) { return Rational(static_cast<std::int64_t>(n)); }

Polynomial poly(std::initializer_list<std::int64_t> ascending) {
  std::vector<Rational> c;
  for (std::int64_t v : ascending) c.emplace_back(v);
  return Polynomial(std::move(c));
}

std::vector<Rational> intersect(const std::vector<Rational>& a,
                                const std::vector<Rational>& b) {
  std::vector<Rational> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::Direct: return "A:direct";
    case Branch::NotRepresentable: return "B:not-representable";
    case Branch::TwoSquare: return "C:two-square";
    case Branch::PureSquare: return "D:pure-square";
  }
  return "?";
}

std::size_t BranchHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

ReplayEngine::ReplayEngine(std::uint64_t bound)
    : table_(std::max<std::uint64_t>(2 * bound + 8, 64)),
      store_(kBootstrapLimit, builder_.sink()) {}

PartialFn ReplayEngine::release_store() {
  PartialFn out = store_;
  out.set_sink({});
  return out;
}

Certificate ReplayEngine::release_certificate(std::uint64_t bound) {
  store_.set_sink({});
  return std::move(builder_).finish(bound);
}

const Rational& ReplayEngine::require(std::uint64_t slot,
                                      std::uint64_t for_n) const {
  const Rational* v = store_.find(slot);
  if (v == nullptr) throw HypothesisGap(for_n, slot);
  return *v;
}

StepRef ReplayEngine::functional_equation(std::uint64_t a, std::uint64_t b,
                                          std::uint64_t c,
                                          std::uint64_t for_n) {
  const SumOfSquares sos = make_sum_of_squares(a, b, c);
  DerivationStep step;
  step.target = sos.s;
  step.kind = FunctionalEquationStep{sos.a, sos.b, sos.c};
  Rational value(0);
  for (std::uint64_t p : {sos.a, sos.b, sos.c}) {
    value += square(require(p, for_n));
    step.refs.push_back(store_.provenance(p));
  }
  step.value = value;
  const StepRef ref = builder_.append(std::move(step));
  store_.assign(sos.s, value, ref);
  return ref;
}

StepRef ReplayEngine::multiplicativity(std::uint64_t m, std::uint64_t n,
                                       std::uint64_t for_n) {
  const Coprime cp = make_coprime(std::min(m, n), std::max(m, n));
  DerivationStep step;
  step.target = cp.product();
  step.kind = MultiplicativityStep{cp.m, cp.n};
  step.value = require(cp.m, for_n) * require(cp.n, for_n);
  step.refs = {store_.provenance(cp.m), store_.provenance(cp.n)};
  const Rational value = *step.value;
  const StepRef ref = builder_.append(std::move(step));
  store_.assign(cp.product(), value, ref);
  return ref;
}

StepRef ReplayEngine::root_set(std::uint64_t slot, std::vector<Constraint> chain,
                               const Polynomial& scripted) {
  std::vector<std::uint64_t> used;
  for (const auto& c : chain) {
    for (std::uint64_t s : slots(c)) {
      if (s != slot && store_.contains(s)) used.push_back(s);
    }
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  DerivationStep step;
  step.target = slot;
  for (std::uint64_t s : used) step.refs.push_back(store_.provenance(s));
  RootSetStep rs;
  rs.chain = std::move(chain);
  rs.roots = scripted.rational_roots();
  for (const Rational& r : rs.roots) {
    if (!scripted.evaluate(r).is_zero()) {
      throw InternalInconsistency("scripted root does not vanish");
    }
  }
  step.kind = std::move(rs);
  return builder_.append(std::move(step));
}

StepRef ReplayEngine::intersection(std::uint64_t slot,
                                   std::vector<StepRef> root_sets) {
  std::vector<Rational> acc;
  for (std::size_t j = 0; j < root_sets.size(); ++j) {
    const auto& rs = std::get<RootSetStep>(builder_.steps()[root_sets[j]].kind);
    acc = j == 0 ? rs.roots : intersect(acc, rs.roots);
  }
  if (acc.size() != 1) {
    throw InternalInconsistency("candidate sets for f(" + std::to_string(slot) +
                                ") do not collapse to a single value");
  }
  DerivationStep step;
  step.target = slot;
  step.value = acc.front();
  step.kind = IntersectionStep{};
  step.refs = std::move(root_sets);
  const StepRef ref = builder_.append(std::move(step));
  store_.assign(slot, acc.front(), ref);
  return ref;
}

void ReplayEngine::axiom() {
  DerivationStep step;
  step.target = 1;
  step.value = Rational(1);
  step.kind = AxiomStep{};
  const StepRef ref = builder_.append(std::move(step));
  store_.assign(1, Rational(1), ref);
}

const BootstrapState& ReplayEngine::bootstrap() {
  axiom();
  functional_equation(1, 1, 1, 3);  // f(3) = 3

  // f(2): f(6) = 2 + x^2 = 3x, then the 12/14/21 relations with
  // f(4) = x^2 and f(7) = x + 10/x give 1 + x^2 + x^4 = 3(x + 10/x).
  const StepRef f2_a = root_set(
      2, {make_sum_of_squares(1, 1, 2), make_coprime(2, 3)}, poly({2, -3, 1}));
  const StepRef f2_b = root_set(
      2,
      {make_sum_of_squares(2, 2, 2), make_coprime(3, 4),
       make_sum_of_squares(1, 2, 3), make_coprime(2, 7),
       make_sum_of_squares(1, 2, 4), make_coprime(3, 7)},
      poly({-30, 1, -3, 1, 0, 1}));
  for (StepRef r : {f2_a, f2_b}) {
    state_.f2_root_sets.push_back(
        std::get<RootSetStep>(builder_.steps()[r].kind).roots);
  }
  intersection(2, {f2_a, f2_b});
  state_.f2_candidates = {*store_.find(2)};

  functional_equation(2, 2, 2, 12);  // f(12); closure divides out f(4)
  functional_equation(1, 2, 3, 14);  // f(14); closure divides out f(7)
  functional_equation(1, 2, 4, 21);

  // f(5): f(27) = 2 + x^2 = 27 and f(30) = 5 + x^2 = 6x.
  functional_equation(3, 3, 3, 27);
  const StepRef f5_a =
      root_set(5, {make_sum_of_squares(1, 1, 5)}, poly({-25, 0, 1}));
  const StepRef f5_b = root_set(
      5, {make_sum_of_squares(1, 2, 5), make_coprime(5, 6)}, poly({5, -6, 1}));
  for (StepRef r : {f5_a, f5_b}) {
    state_.f5_root_sets.push_back(
        std::get<RootSetStep>(builder_.steps()[r].kind).roots);
  }
  intersection(5, {f5_a, f5_b});  // closure: f(10), f(15)
  state_.f5_candidates = {*store_.find(5)};
  functional_equation(1, 2, 5, 30);

  functional_equation(3, 4, 5, 50);  // closure divides out f(25)
  functional_equation(2, 2, 4, 24);  // closure divides out f(8)
  functional_equation(1, 2, 2, 9);
  functional_equation(1, 1, 3, 11);
  // 13 has no nonvanishing triple; go through 26 = 1 + 9 + 16.
  functional_equation(1, 3, 4, 26);

  for (std::uint64_t n = 1; n <= kBootstrapLimit; ++n) {
    const Rational* v = store_.find(n);
    if (v == nullptr || *v != integer(n)) {
      throw InternalInconsistency("bootstrap did not pin f(" +
                                  std::to_string(n) + ")");
    }
  }
  return state_;
}

void ReplayEngine::establish(std::uint64_t n) {
  const Rational* v = store_.find(n);
  if (v == nullptr || *v != integer(n)) {
    throw InternalInconsistency("branch " + branch_name(last_branch_) +
                                " did not establish f(" + std::to_string(n) +
                                ") = " + std::to_string(n));
  }
}

std::vector<DerivationStep> ReplayEngine::induction_step(std::uint64_t n) {
  if (n <= kBootstrapLimit) {
    throw std::invalid_argument("induction starts above the bootstrap table");
  }
  const std::size_t first = builder_.size();
  const ThreeSquaresClass cls = classify(n, table_);

  if (const auto* direct = std::get_if<NonvanishingRepresentable>(&cls)) {
    last_branch_ = Branch::Direct;
    const Representation& w = direct->witness;
    functional_equation(w.a, w.b, w.c, n);
  } else if (const auto* nr = std::get_if<NotRepresentable>(&cls)) {
    last_branch_ = Branch::NotRepresentable;
    const std::uint64_t m = 8 * nr->t + 7;
    if (nr->s == 0) {
      // 2m = 8(2t+1) + 6 is a sum of three nonvanishing squares.
      const auto rep = least_nonvanishing(2 * m, table_);
      if (!rep) {
        throw InternalInconsistency(std::to_string(2 * m) +
                                    " has no nonvanishing representation");
      }
      if (rep->c >= n) {
        throw InternalInconsistency("auxiliary part not below n");
      }
      functional_equation(rep->a, rep->b, rep->c, n);  // closure: f(m)
    } else {
      std::uint64_t power = 1;
      for (std::uint64_t i = 0; i < nr->s; ++i) power *= 4;
      multiplicativity(power, m, n);
    }
  } else if (const auto* two = std::get_if<TwoSquareOnly>(&cls)) {
    last_branch_ = Branch::TwoSquare;
    if (two->a <= 2 && two->b <= 3) {
      throw InternalInconsistency("two-square case below the bootstrap table");
    }
    if (n % 5 != 0) {
      ++histogram_.two_square_scaled;
      // 25n = (5a)^2 + (3b)^2 + (4b)^2, all parts below n.
      if (!(5 * two->a < n && 4 * two->b < n)) {
        throw InternalInconsistency("scaling guards 5a < n, 4b < n fail at " +
                                    std::to_string(n));
      }
      functional_equation(5 * two->a, 3 * two->b, 4 * two->b, n);
    } else {
      ++histogram_.two_square_five_power;
      unsigned s = 0;
      std::uint64_t k = n, power = 1;
      while (k % 5 == 0) {
        k /= 5;
        power *= 5;
        ++s;
      }
      if (s >= 3) {
        const Representation rep = five_power_representation(s);
        functional_equation(rep.a, rep.b, rep.c, n);
      }
      multiplicativity(power, k, n);
    }
  } else {
    last_branch_ = Branch::PureSquare;
    const auto& pure = std::get<PureSquareOnly>(cls);
    unsigned s = 0;
    std::uint64_t r = pure.r;
    while (r % 2 == 0) {
      r /= 2;
      ++s;
    }
    if (r != 1) throw CaseFallthrough(n);  // Hurwitz: only 4^s remain here
    const std::uint64_t h = pure.r;        // 2^s
    functional_equation(h, h, h, n);       // f(3 * 4^s); closure divides by f(3)
  }

  establish(n);
  ++histogram_[last_branch_];
  return {builder_.steps().begin() + static_cast<std::ptrdiff_t>(first),
          builder_.steps().end()};
}

BootstrapResult bootstrap() {
  ReplayEngine engine(kBootstrapLimit);
  engine.bootstrap();
  BootstrapResult out{engine.release_store(), {}, engine.bootstrap_state()};
  out.steps = std::move(engine).release_certificate(kBootstrapLimit).steps;
  return out;
}

VerifyResult verify_up_to(std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("verify_up_to requires N >= 1");
  ReplayEngine engine(N);
  if (N == 1) {
    engine.axiom();
  } else {
    engine.bootstrap();
    for (std::uint64_t n = kBootstrapLimit + 1; n <= N; ++n) {
      engine.induction_step(n);
    }
  }
  VerifyResult out{engine.release_store(), {}, {}};
  out.summary.bound = N;
  out.summary.histogram = engine.histogram();
  out.certificate = engine.release_certificate(N);
  out.summary.steps = out.certificate.steps.size();
  return out;
}

}  // namespace sqcert
