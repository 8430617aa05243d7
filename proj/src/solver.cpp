#include "sqcert/solver.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <set>
#include <stdexcept>

#include "sqcert/errors.hpp"

namespace sqcert {

namespace {

// Expressions above this degree are not formed; the constraint waits.
constexpr int kDegreeCap = 48;

struct ContradictionSignal {
  std::string reason;
};

bool processing_order(const Constraint& x, const Constraint& y) {
  const auto kx = std::make_pair(top_slot(x), x.index());
  const auto ky = std::make_pair(top_slot(y), y.index());
  if (kx != ky) return kx < ky;
  return x < y;
}

std::shared_ptr<const std::vector<Constraint>> processing_list(
    std::uint64_t horizon) {
  auto list = generate_constraints(horizon);
  // Coprime(1, n) is satisfied by f(1) = 1 and carries no information.
  std::erase_if(list, [](const Constraint& c) {
    const auto* cp = std::get_if<Coprime>(&c);
    return cp != nullptr && cp->m == 1;
  });
  std::sort(list.begin(), list.end(), processing_order);
  return std::make_shared<const std::vector<Constraint>>(std::move(list));
}

std::string value_list(const std::vector<Rational>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].to_display();
  }
  return out + "}";
}

bool holds(const Constraint& c, const PartialFn& store) {
  if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
    return *store.find(sos->s) == square(*store.find(sos->a)) +
                                      square(*store.find(sos->b)) +
                                      square(*store.find(sos->c));
  }
  const auto& cp = std::get<Coprime>(c);
  return *store.find(cp.product()) == *store.find(cp.m) * *store.find(cp.n);
}

bool all_assigned(const Constraint& c, const PartialFn& store) {
  for (std::uint64_t s : slots(c)) {
    if (!store.contains(s)) return false;
  }
  return true;
}

}  // namespace

std::vector<Constraint> generate_constraints(std::uint64_t horizon) {
  if (horizon < 3) throw std::invalid_argument("horizon must be at least 3");
  std::vector<Constraint> out;
  std::vector<SumOfSquares> sums;
  for (std::uint64_t a = 1; 3 * a * a <= horizon; ++a) {
    for (std::uint64_t b = a; a * a + 2 * b * b <= horizon; ++b) {
      for (std::uint64_t c = b; a * a + b * b + c * c <= horizon; ++c) {
        sums.push_back(make_sum_of_squares(a, b, c));
      }
    }
  }
  std::sort(sums.begin(), sums.end(), [](const auto& x, const auto& y) {
    return std::tie(x.s, x.a, x.b, x.c) < std::tie(y.s, y.a, y.b, y.c);
  });
  for (const auto& s : sums) out.emplace_back(s);
  std::vector<Coprime> pairs;
  for (std::uint64_t m = 1; m * (m + 1) <= horizon; ++m) {
    for (std::uint64_t n = m + 1; m * n <= horizon; ++n) {
      if (std::gcd(m, n) == 1) pairs.push_back({m, n});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    return std::make_pair(x.product(), x.m) < std::make_pair(y.product(), y.m);
  });
  for (const auto& p : pairs) out.emplace_back(p);
  return out;
}

std::string outcome_name(PropagateOutcome o) {
  switch (o) {
    case PropagateOutcome::Progress: return "progress";
    case PropagateOutcome::Stuck: return "stuck";
    case PropagateOutcome::Contradiction: return "contradiction";
  }
  return "?";
}

BranchNode::BranchNode(std::shared_ptr<const std::vector<Constraint>> constraints,
                       std::uint64_t horizon)
    : constraints_(std::move(constraints)),
      store_(horizon),
      equation_base_(constraints_->size(), 0),
      done_(constraints_->size(), 0) {
  store_.assign(1, Rational(1));
}

bool BranchNode::is_free(std::uint64_t slot) const {
  return !store_.contains(slot) && exprs_.count(slot) == 0;
}

std::optional<RationalFunction> BranchNode::term(std::uint64_t slot,
                                                 std::uint64_t base) const {
  if (const Rational* v = store_.find(slot)) {
    return RationalFunction::constant(*v);
  }
  if (auto it = exprs_.find(slot); it != exprs_.end()) {
    if (it->second.base != base) return std::nullopt;
    return it->second.value;
  }
  if (slot == base) return RationalFunction::variable();
  return std::nullopt;
}

std::vector<Rational> BranchNode::roots_of(std::uint64_t base,
                                           const RationalFunction& diff) const {
  std::vector<Rational> roots;
  for (const Rational& r : diff.num.rational_roots()) {
    if (!diff.den.evaluate(r).is_zero()) roots.push_back(r);
  }
  if (auto it = exceptional_.find(base); it != exceptional_.end()) {
    for (const Rational& z : it->second) {
      if (diff.den.evaluate(z).is_zero()) roots.push_back(z);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

BranchNode::Applied BranchNode::apply(std::size_t i) {
  const Constraint& c = (*constraints_)[i];
  const auto sl = slots(c);

  std::set<std::uint64_t> bases;
  bool all_known = true;
  for (std::uint64_t s : sl) {
    if (store_.contains(s)) continue;
    all_known = false;
    auto it = exprs_.find(s);
    bases.insert(it == exprs_.end() ? s : it->second.base);
  }
  if (all_known) {
    done_[i] = 1;
    if (!holds(c, store_)) {
      throw ContradictionSignal{"violated: " + to_string(c)};
    }
    return Applied::NoChange;
  }

  // A free slot occurring linearly can be defined from the others.
  std::vector<std::uint64_t> outputs;
  if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
    outputs = {sos->s};
  } else {
    const auto& cp = std::get<Coprime>(c);
    outputs = {cp.product(), cp.m, cp.n};
  }
  for (std::uint64_t o : outputs) {
    if (!is_free(o)) continue;
    std::set<std::uint64_t> rest = bases;
    rest.erase(o);
    if (rest.size() > 1) continue;
    const std::uint64_t base = rest.empty() ? 0 : *rest.begin();
    auto t = [&](std::uint64_t s) { return *term(s, base); };

    RationalFunction value;
    if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
      value = t(sos->a) * t(sos->a) + t(sos->b) * t(sos->b) +
              t(sos->c) * t(sos->c);
    } else {
      const auto& cp = std::get<Coprime>(c);
      if (o == cp.product()) {
        value = t(cp.m) * t(cp.n);
      } else {
        const RationalFunction divisor = t(o == cp.m ? cp.n : cp.m);
        const RationalFunction dividend = t(cp.product());
        if (divisor.num.is_zero()) continue;
        std::vector<Rational> zeros;
        try {
          zeros = divisor.num.rational_roots();
        } catch (const RootSearchLimit&) {
          continue;
        }
        for (const Rational& z : zeros) {
          if (dividend.num.evaluate(z).is_zero() ||
              dividend.den.evaluate(z).is_zero()) {
            exceptional_[base].push_back(z);
          }
        }
        value = dividend / divisor;
      }
    }
    if (value.degree() > kDegreeCap) continue;
    if (base == 0) {
      store_.assign(o, value.num.coefficient(0) / value.den.coefficient(0));
    } else {
      if (is_free(base)) exprs_[base] = {base, RationalFunction::variable()};
      exprs_[o] = {base, std::move(value)};
    }
    return Applied::Changed;
  }

  if (bases.size() != 1) return Applied::NoChange;
  const std::uint64_t base = *bases.begin();
  if (equation_base_[i] == base) return Applied::NoChange;
  RationalFunction lhs, rhs;
  auto t = [&](std::uint64_t s) { return *term(s, base); };
  if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
    lhs = t(sos->s);
    rhs = t(sos->a) * t(sos->a) + t(sos->b) * t(sos->b) + t(sos->c) * t(sos->c);
  } else {
    const auto& cp = std::get<Coprime>(c);
    lhs = t(cp.product());
    rhs = t(cp.m) * t(cp.n);
  }
  const RationalFunction diff = lhs - rhs;
  equation_base_[i] = base;
  if (diff.num.is_zero()) return Applied::NoChange;
  std::vector<Rational> roots;
  try {
    roots = roots_of(base, diff);
  } catch (const RootSearchLimit&) {
    return Applied::NoChange;
  }
  if (is_free(base)) exprs_[base] = {base, RationalFunction::variable()};
  observe(base, std::move(roots), c, diff.num);
  return Applied::Changed;
}

void BranchNode::observe(std::uint64_t base, std::vector<Rational> roots,
                         std::optional<Constraint> source, Polynomial equation) {
  if (roots.empty()) ++empty_root_sets_;
  auto it = candidates_.find(base);
  std::vector<Rational> next;
  if (it == candidates_.end()) {
    next = roots;
  } else {
    std::set_intersection(it->second.begin(), it->second.end(), roots.begin(),
                          roots.end(), std::back_inserter(next));
  }
  log_.push_back({base, std::move(source), std::move(equation), roots, next});
  candidates_[base] = next;
  if (next.empty()) {
    throw ContradictionSignal{"no rational candidate left for f(" +
                              std::to_string(base) + "); last roots " +
                              value_list(roots)};
  }
  if (next.size() == 1) resolve(base, next.front());
}

void BranchNode::resolve(std::uint64_t base, const Rational& value) {
  if (auto it = candidates_.find(base); it != candidates_.end()) {
    if (!std::binary_search(it->second.begin(), it->second.end(), value)) {
      throw ContradictionSignal{"f(" + std::to_string(base) + ") = " +
                                value.to_display() +
                                " is outside its candidate set"};
    }
  }
  std::vector<std::pair<std::uint64_t, RationalFunction>> bound;
  for (auto it = exprs_.begin(); it != exprs_.end();) {
    if (it->second.base == base) {
      if (it->first != base) bound.emplace_back(it->first, it->second.value);
      it = exprs_.erase(it);
    } else {
      ++it;
    }
  }
  candidates_.erase(base);
  exceptional_.erase(base);
  store_.assign(base, value);
  for (const auto& [slot, rf] : bound) {
    if (auto v = rf.evaluate(value)) store_.assign(slot, *v);
  }
}

bool BranchNode::reconcile() {
  bool any = false;
  while (true) {
    auto it = std::find_if(exprs_.begin(), exprs_.end(), [this](const auto& e) {
      return store_.contains(e.first);
    });
    if (it == exprs_.end()) return any;
    any = true;
    const std::uint64_t slot = it->first;
    const Expr expr = it->second;
    const Rational value = *store_.find(slot);
    if (slot == expr.base) {
      resolve(slot, value);
      continue;
    }
    exprs_.erase(it);
    const RationalFunction diff =
        expr.value - RationalFunction::constant(value);
    if (diff.num.is_zero()) continue;
    std::vector<Rational> roots;
    try {
      roots = roots_of(expr.base, diff);
    } catch (const RootSearchLimit&) {
      continue;
    }
    observe(expr.base, std::move(roots), std::nullopt, diff.num);
  }
}

PropagateOutcome BranchNode::propagate() {
  try {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < constraints_->size(); ++i) {
        if (done_[i]) continue;
        if (apply(i) == Applied::Changed) changed = true;
        if (reconcile()) changed = true;
      }
    }
  } catch (const ContradictionSignal& signal) {
    contradiction_ = signal.reason;
    return PropagateOutcome::Contradiction;
  } catch (const ConflictError& e) {
    contradiction_ = e.what();
    return PropagateOutcome::Contradiction;
  }
  return branch_slot() ? PropagateOutcome::Stuck : PropagateOutcome::Progress;
}

void BranchNode::decide(std::uint64_t slot, const Rational& value) {
  Decision d{slot, value, {}};
  for (const Rational& r : candidates(slot)) {
    if (r != value) d.alternatives.push_back(r);
  }
  decisions_.push_back(std::move(d));
  try {
    resolve(slot, value);
  } catch (const ContradictionSignal& signal) {
    contradiction_ = signal.reason;
  } catch (const ConflictError& e) {
    contradiction_ = e.what();
  }
}

std::optional<std::uint64_t> BranchNode::branch_slot() const {
  for (const auto& [slot, cands] : candidates_) {
    if (cands.size() >= 2) return slot;
  }
  return std::nullopt;
}

std::vector<Rational> BranchNode::candidates(std::uint64_t slot) const {
  auto it = candidates_.find(slot);
  return it == candidates_.end() ? std::vector<Rational>{} : it->second;
}

std::optional<Rational> SearchReport::forced_value(std::uint64_t n) const {
  auto it = std::lower_bound(
      forced.begin(), forced.end(), n,
      [](const auto& e, std::uint64_t key) { return e.first < key; });
  if (it == forced.end() || it->first != n) return std::nullopt;
  return it->second;
}

bool SearchReport::all_identity() const {
  if (!unforced.empty() || forced.size() != report_bound) return false;
  return std::all_of(forced.begin(), forced.end(), [](const auto& e) {
    return e.second == Rational(static_cast<std::int64_t>(e.first));
  });
}

std::vector<Constraint> violated_constraints(
    const std::vector<Constraint>& constraints, const PartialFn& store) {
  std::vector<Constraint> out;
  for (const auto& c : constraints) {
    if (all_assigned(c, store) && !holds(c, store)) out.push_back(c);
  }
  return out;
}

namespace {

class Search {
 public:
  Search(std::uint64_t horizon, std::uint64_t report_bound,
         const SearchOptions& options)
      : all_(generate_constraints(horizon)),
        list_(processing_list(horizon)),
        horizon_(horizon),
        cap_(options.branch_cap) {
    report_.horizon = horizon;
    report_.report_bound = report_bound;
    report_.constraints = all_.size();
  }

  SearchReport run() {
    BranchNode root(list_, horizon_);
    visit(std::move(root), true);
    reduce();
    return std::move(report_);
  }

 private:
  void visit(BranchNode node, bool is_root) {
    if (++report_.nodes > cap_) throw BudgetExceeded(cap_);
    if (!node.contradiction().empty()) {
      record_contradiction(node);
      return;
    }
    const std::size_t empty_before = node.empty_root_sets();
    const PropagateOutcome outcome = node.propagate();
    report_.empty_root_sets += node.empty_root_sets() - empty_before;
    if (is_root) report_.root_set_log = node.root_set_log();
    if (outcome == PropagateOutcome::Contradiction) {
      record_contradiction(node);
      return;
    }
    if (outcome == PropagateOutcome::Stuck) {
      ++report_.branch_points;
      const std::uint64_t slot = *node.branch_slot();
      for (const Rational& r : node.candidates(slot)) {
        BranchNode child = node;
        child.decide(slot, r);
        visit(std::move(child), false);
      }
      return;
    }
    if (auto bad = violated_constraints(all_, node.store()); !bad.empty()) {
      throw InternalInconsistency("surviving leaf violates " +
                                  to_string(bad.front()));
    }
    SearchLeaf leaf;
    leaf.decisions = node.decisions();
    for (const auto& [n, v] : node.store().entries()) {
      if (n > report_.report_bound) break;
      leaf.values.emplace_back(n, v);
    }
    report_.leaves.push_back(std::move(leaf));
  }

  void record_contradiction(const BranchNode& node) {
    ++report_.contradictions;
    std::string path;
    for (const auto& d : node.decisions()) {
      path += "f(" + std::to_string(d.slot) + ")=" + d.chosen.to_display() + " ";
    }
    report_.contradiction_log.push_back(path + "-> " + node.contradiction());
  }

  void reduce() {
    for (std::uint64_t n = 1; n <= report_.report_bound; ++n) {
      std::optional<Rational> common;
      bool forced = !report_.leaves.empty();
      for (const auto& leaf : report_.leaves) {
        auto it = std::lower_bound(
            leaf.values.begin(), leaf.values.end(), n,
            [](const auto& e, std::uint64_t key) { return e.first < key; });
        if (it == leaf.values.end() || it->first != n ||
            (common && *common != it->second)) {
          forced = false;
          break;
        }
        common = it->second;
      }
      if (forced) {
        report_.forced.emplace_back(n, *common);
      } else {
        report_.unforced.push_back(n);
      }
    }
  }

  std::vector<Constraint> all_;
  std::shared_ptr<const std::vector<Constraint>> list_;
  std::uint64_t horizon_;
  std::size_t cap_;
  SearchReport report_;
};

}  // namespace

SearchReport search(std::uint64_t horizon, std::uint64_t report_bound,
                    const SearchOptions& options) {
  if (report_bound > horizon) {
    throw std::invalid_argument("report bound must not exceed the horizon");
  }
  return Search(horizon, report_bound, options).run();
}

std::optional<std::uint64_t> minimal_horizon(std::uint64_t report_bound,
                                             std::uint64_t limit,
                                             const SearchOptions& options) {
  for (std::uint64_t h = std::max<std::uint64_t>(report_bound, 3); h <= limit;
       ++h) {
    if (search(h, report_bound, options).unforced.empty()) return h;
  }
  return std::nullopt;
}

BranchNode replay_decisions(std::uint64_t horizon,
                            const std::vector<Decision>& decisions) {
  BranchNode node(processing_list(horizon), horizon);
  node.propagate();
  for (const auto& d : decisions) {
    node.decide(d.slot, d.chosen);
    node.propagate();
  }
  return node;
}

}  // namespace sqcert
