// Independent certificate checker. Uses only exact arithmetic on the data in
// the certificate: no enumeration kernels, no replay or solver state.

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "sqcert/certificate.hpp"
#include "sqcert/errors.hpp"
#include "sqcert/polynomial.hpp"

namespace sqcert {

namespace {

struct ChainOutcome {
  std::string error;  // empty on success
  std::vector<Rational> roots;
};

/// Value of a slot inside a chain: known constant, the unknown itself, or a
/// slot the chain defined earlier.
class ChainScope {
 public:
  ChainScope(std::uint64_t var, const std::map<std::uint64_t, Rational>& known)
      : var_(var), known_(known) {}

  std::optional<RationalFunction> symbolic(std::uint64_t slot) const {
    if (slot == var_) return RationalFunction::variable();
    if (auto it = known_.find(slot); it != known_.end()) {
      return RationalFunction::constant(it->second);
    }
    if (auto it = defined_.find(slot); it != defined_.end()) return it->second;
    return std::nullopt;
  }

  void define(std::uint64_t slot, RationalFunction rf) {
    defined_.emplace(slot, std::move(rf));
  }

 private:
  std::uint64_t var_;
  const std::map<std::uint64_t, Rational>& known_;
  std::map<std::uint64_t, RationalFunction> defined_;
};

std::vector<std::uint64_t> undetermined(const Constraint& c,
                                        const ChainScope& scope) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : slots(c)) {
    if (!scope.symbolic(s)) out.push_back(s);
  }
  return out;
}

RationalFunction sum_of_squares_rhs(const SumOfSquares& sos,
                                    const ChainScope& scope) {
  RationalFunction total = RationalFunction::constant(0);
  for (std::uint64_t p : {sos.a, sos.b, sos.c}) {
    const RationalFunction v = *scope.symbolic(p);
    total = total + v * v;
  }
  return total;
}

/// Symbolic route: the exact set of rational x for which the chain can hold,
/// widened by points where a 0/0 division left a slot unconstrained.
ChainOutcome solve_chain(std::uint64_t var, const std::vector<Constraint>& chain,
                         const std::map<std::uint64_t, Rational>& known) {
  ChainOutcome out;
  ChainScope scope(var, known);
  std::vector<Rational> exceptional;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Constraint& c = chain[i];
    const bool last = i + 1 == chain.size();
    const auto open = undetermined(c, scope);
    if (open.size() > 1) {
      out.error = "chain constraint " + std::to_string(i) +
                  " has more than one undetermined slot";
      return out;
    }
    if (open.size() == 1) {
      if (last) {
        out.error = "chain ends without an equation";
        return out;
      }
      const std::uint64_t o = open.front();
      if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
        if (o != sos->s) {
          out.error = "chain defines a squared slot";
          return out;
        }
        scope.define(o, sum_of_squares_rhs(*sos, scope));
        continue;
      }
      const auto& cp = std::get<Coprime>(c);
      const std::uint64_t mn = cp.m * cp.n;
      if (o == mn) {
        scope.define(o, *scope.symbolic(cp.m) * *scope.symbolic(cp.n));
        continue;
      }
      const std::uint64_t other = o == cp.m ? cp.n : cp.m;
      const RationalFunction divisor = *scope.symbolic(other);
      const RationalFunction dividend = *scope.symbolic(mn);
      if (divisor.num.is_zero()) {
        out.error = "chain divides by an identically zero value";
        return out;
      }
      for (const Rational& z : divisor.num.rational_roots()) {
        if (dividend.num.evaluate(z).is_zero() ||
            dividend.den.evaluate(z).is_zero()) {
          exceptional.push_back(z);
        }
      }
      scope.define(o, dividend / divisor);
      continue;
    }
    if (!last) {
      out.error = "equation before the end of the chain";
      return out;
    }
    RationalFunction lhs, rhs;
    if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
      lhs = *scope.symbolic(sos->s);
      rhs = sum_of_squares_rhs(*sos, scope);
    } else {
      const auto& cp = std::get<Coprime>(c);
      lhs = *scope.symbolic(cp.m * cp.n);
      rhs = *scope.symbolic(cp.m) * *scope.symbolic(cp.n);
    }
    const RationalFunction diff = lhs - rhs;
    if (diff.num.is_zero()) {
      out.error = "chain equation holds identically";
      return out;
    }
    for (const Rational& r : diff.num.rational_roots()) {
      if (!diff.den.evaluate(r).is_zero()) out.roots.push_back(r);
    }
    for (const Rational& z : exceptional) {
      if (diff.den.evaluate(z).is_zero()) out.roots.push_back(z);
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end()),
                    out.roots.end());
    return out;
  }
  out.error = "empty chain";
  return out;
}

/// Substitution route: plug x = r into the chain. Returns false only when
/// r is refuted outright; a 0/0 division leaves the rest undecidable.
bool substitution_admits(std::uint64_t var, const std::vector<Constraint>& chain,
                         const std::map<std::uint64_t, Rational>& known,
                         const Rational& r) {
  std::map<std::uint64_t, Rational> vals = known;
  vals[var] = r;
  auto get = [&vals](std::uint64_t s) -> const Rational* {
    auto it = vals.find(s);
    return it == vals.end() ? nullptr : &it->second;
  };
  for (const Constraint& c : chain) {
    if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
      const Rational *a = get(sos->a), *b = get(sos->b), *cc = get(sos->c);
      if (!a || !b || !cc) return true;
      const Rational rhs = square(*a) + square(*b) + square(*cc);
      if (const Rational* s = get(sos->s)) {
        if (*s != rhs) return false;
      } else {
        vals[sos->s] = rhs;
      }
      continue;
    }
    const auto& cp = std::get<Coprime>(c);
    const std::uint64_t mn = cp.m * cp.n;
    const Rational *fm = get(cp.m), *fn = get(cp.n), *fmn = get(mn);
    if (fm && fn) {
      const Rational prod = *fm * *fn;
      if (fmn && *fmn != prod) return false;
      if (!fmn) vals[mn] = prod;
      continue;
    }
    if (!fmn) return true;
    const Rational* divisor = fm ? fm : fn;
    if (!divisor) return true;
    if (divisor->is_zero()) {
      if (!fmn->is_zero()) return false;
      return true;
    }
    vals[fm ? cp.n : cp.m] = *fmn / *divisor;
  }
  return true;
}

bool checked_square_sum(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                        std::uint64_t& out) {
  std::uint64_t total = 0;
  for (std::uint64_t x : {a, b, c}) {
    std::uint64_t sq = 0;
    if (__builtin_mul_overflow(x, x, &sq) ||
        __builtin_add_overflow(total, sq, &total)) {
      return false;
    }
  }
  out = total;
  return true;
}

class Checker {
 public:
  explicit Checker(const Certificate& cert) : cert_(cert) {}

  CheckReport run() {
    const auto& steps = cert_.steps;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (!check_step(i)) return report_;
      report_.steps_checked = i + 1;
    }
    for (std::uint64_t n = 1; n <= cert_.header.bound; ++n) {
      auto it = earliest_.find(n);
      if (it == earliest_.end()) {
        report_.reason = "f(" + std::to_string(n) + ") is never established";
        return report_;
      }
      if (*steps[it->second].value != Rational(static_cast<std::int64_t>(n))) {
        report_.failing_step = it->second;
        report_.reason = "f(" + std::to_string(n) + ") is not " +
                         std::to_string(n);
        return report_;
      }
    }
    report_.valid = true;
    return report_;
  }

 private:
  bool fail(std::size_t i, std::string reason) {
    report_.failing_step = i;
    report_.reason = std::move(reason);
    return false;
  }

  /// Value of f(slot) as cited by ref, enforcing the earliest-step rule.
  const Rational* cited(std::size_t ref, std::uint64_t slot) const {
    auto it = earliest_.find(slot);
    if (it == earliest_.end() || it->second != ref) return nullptr;
    return &*cert_.steps[ref].value;
  }

  bool check_step(std::size_t i) {
    const DerivationStep& st = cert_.steps[i];
    if (st.index != i) return fail(i, "step indices are not dense");
    if (st.target == 0) return fail(i, "target must be positive");
    for (StepRef r : st.refs) {
      if (r >= i) return fail(i, "back-reference violated");
    }
    const bool is_root_set = std::holds_alternative<RootSetStep>(st.kind);
    if (is_root_set == st.value.has_value()) {
      return fail(i, is_root_set ? "root set carries a value"
                                 : "step is missing its value");
    }
    const bool ok = std::visit([&](const auto& k) { return check_kind(i, k); },
                               st.kind);
    if (!ok) return false;
    if (!is_root_set) {
      auto [it, inserted] = earliest_.emplace(st.target, i);
      if (!inserted && *cert_.steps[it->second].value != *st.value) {
        return fail(i, "conflicting values for f(" +
                           std::to_string(st.target) + ")");
      }
    }
    return true;
  }

  bool check_kind(std::size_t i, const AxiomStep&) {
    const auto& st = cert_.steps[i];
    if (st.target != 1 || !st.refs.empty() || *st.value != Rational(1)) {
      return fail(i, "axiom must state f(1) = 1 with no references");
    }
    return true;
  }

  bool check_kind(std::size_t i, const FunctionalEquationStep& k) {
    const auto& st = cert_.steps[i];
    if (k.a < 1 || k.a > k.b || k.b > k.c) {
      return fail(i, "parts must satisfy 1 <= a <= b <= c");
    }
    std::uint64_t sum = 0;
    if (!checked_square_sum(k.a, k.b, k.c, sum) || sum != st.target) {
      return fail(i, "a^2 + b^2 + c^2 does not equal the target");
    }
    if (st.refs.size() != 3) return fail(i, "expected three references");
    Rational expected(0);
    const std::uint64_t parts[3] = {k.a, k.b, k.c};
    for (int p = 0; p < 3; ++p) {
      const Rational* v = cited(st.refs[p], parts[p]);
      if (!v) return fail(i, "reference does not cite f(" +
                                 std::to_string(parts[p]) + ")");
      expected += square(*v);
    }
    if (expected != *st.value) return fail(i, "value mismatch");
    return true;
  }

  bool check_kind(std::size_t i, const MultiplicativityStep& k) {
    const auto& st = cert_.steps[i];
    std::uint64_t mn = 0;
    if (k.m < 1 || k.m >= k.n || std::gcd(k.m, k.n) != 1 ||
        __builtin_mul_overflow(k.m, k.n, &mn) || mn != st.target) {
      return fail(i, "factors must be coprime, ascending, with product target");
    }
    if (st.refs.size() != 2) return fail(i, "expected two references");
    const Rational* fm = cited(st.refs[0], k.m);
    const Rational* fn = cited(st.refs[1], k.n);
    if (!fm || !fn) return fail(i, "references do not cite the factors");
    if (*fm * *fn != *st.value) return fail(i, "value mismatch");
    return true;
  }

  bool check_kind(std::size_t i, const DivisionStep& k) {
    const auto& st = cert_.steps[i];
    if (k.divisor < 2 || k.dividend % k.divisor != 0 ||
        k.dividend / k.divisor != st.target ||
        std::gcd(k.divisor, st.target) != 1) {
      return fail(i, "division must split the dividend into coprime parts");
    }
    if (st.refs.size() != 2) return fail(i, "expected two references");
    const Rational* num = cited(st.refs[0], k.dividend);
    const Rational* den = cited(st.refs[1], k.divisor);
    if (!num || !den) return fail(i, "references do not cite the operands");
    if (den->is_zero()) return fail(i, "division by zero");
    if (*num / *den != *st.value) return fail(i, "value mismatch");
    return true;
  }

  bool check_kind(std::size_t i, const RootSetStep& k) {
    const auto& st = cert_.steps[i];
    if (k.chain.empty()) return fail(i, "empty chain");
    for (const auto& c : k.chain) {
      if (!well_formed(c)) return fail(i, "malformed chain constraint");
    }
    std::map<std::uint64_t, Rational> known;
    std::vector<std::uint64_t> chain_slots;
    for (const auto& c : k.chain) {
      for (std::uint64_t s : slots(c)) chain_slots.push_back(s);
    }
    std::uint64_t previous = 0;
    for (StepRef r : st.refs) {
      const std::uint64_t slot = cert_.steps[r].target;
      if (slot <= previous) {
        return fail(i, "references must cite distinct arguments in order");
      }
      previous = slot;
      if (slot == st.target ||
          std::find(chain_slots.begin(), chain_slots.end(), slot) ==
              chain_slots.end()) {
        return fail(i, "reference cites a value the chain does not use");
      }
      const Rational* v = cited(r, slot);
      if (!v) return fail(i, "reference is not the earliest value step");
      known.emplace(slot, *v);
    }
    ChainOutcome outcome;
    try {
      outcome = solve_chain(st.target, k.chain, known);
    } catch (const RootSearchLimit& e) {
      return fail(i, e.what());
    }
    if (!outcome.error.empty()) return fail(i, outcome.error);
    if (outcome.roots != k.roots) return fail(i, "root set mismatch");
    for (const Rational& r : k.roots) {
      if (!substitution_admits(st.target, k.chain, known, r)) {
        return fail(i, "claimed root " + r.to_display() +
                           " fails substitution");
      }
    }
    return true;
  }

  bool check_kind(std::size_t i, const IntersectionStep&) {
    const auto& st = cert_.steps[i];
    if (st.refs.empty()) return fail(i, "intersection cites no root sets");
    std::vector<Rational> acc;
    for (std::size_t j = 0; j < st.refs.size(); ++j) {
      if (j > 0 && st.refs[j] <= st.refs[j - 1]) {
        return fail(i, "intersection references must be strictly ascending");
      }
      const auto& ref = cert_.steps[st.refs[j]];
      const auto* rs = std::get_if<RootSetStep>(&ref.kind);
      if (!rs || ref.target != st.target) {
        return fail(i, "intersection must cite root sets of the same slot");
      }
      if (j == 0) {
        acc = rs->roots;
      } else {
        std::vector<Rational> next;
        std::set_intersection(acc.begin(), acc.end(), rs->roots.begin(),
                              rs->roots.end(), std::back_inserter(next));
        acc = std::move(next);
      }
    }
    if (acc.size() != 1 || acc.front() != *st.value) {
      return fail(i, "intersection does not leave exactly the stated value");
    }
    return true;
  }

  const Certificate& cert_;
  CheckReport report_;
  std::unordered_map<std::uint64_t, std::size_t> earliest_;
};

}  // namespace

CheckReport check(const Certificate& cert) { return Checker(cert).run(); }

}  // namespace sqcert
