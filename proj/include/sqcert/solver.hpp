#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sqcert/constraint.hpp"
#include "sqcert/partial_fn.hpp"
#include "sqcert/polynomial.hpp"

namespace sqcert {

inline constexpr std::size_t kDefaultBranchCap = 10000;

/// Every SumOfSquares with a^2+b^2+c^2 <= horizon (ordered by sum, then
/// parts) followed by every Coprime with mn <= horizon (ordered by product,
/// then m). Requires horizon >= 3.
std::vector<Constraint> generate_constraints(std::uint64_t horizon);

enum class PropagateOutcome {
  Progress,       // fixed point, nothing left to branch on
  Stuck,          // fixed point with an open candidate set
  Contradiction,  // some constraint cannot hold
};

std::string outcome_name(PropagateOutcome o);

/// A one-unknown reduction and the candidate set it left behind.
struct RootSetEvent {
  std::uint64_t slot = 0;
  std::optional<Constraint> source;  // nullopt when a closure value closed it
  Polynomial equation;               // numerator, up to scaling
  std::vector<Rational> roots;
  std::vector<Rational> candidates;  // after intersecting with earlier sets
};

struct Decision {
  std::uint64_t slot = 0;
  Rational chosen;
  std::vector<Rational> alternatives;
};

/// One node of the search tree: a store, the single-variable expressions
/// known for still-open slots, and the decisions that led here.
///
/// Every open slot is either free or expressed as a rational function of one
/// base slot. A constraint fires when, after substitution, it mentions at
/// most one base variable: it then either defines a free slot that occurs
/// linearly (the sum slot, the product slot, or a factor by division) or
/// yields a polynomial equation whose rational roots bound the base.
class BranchNode {
 public:
  BranchNode(std::shared_ptr<const std::vector<Constraint>> constraints,
             std::uint64_t horizon);

  PropagateOutcome propagate();
  /// Fixes f(slot) = value as a branching decision.
  void decide(std::uint64_t slot, const Rational& value);

  /// Smallest slot with an open candidate set of size >= 2.
  std::optional<std::uint64_t> branch_slot() const;
  std::vector<Rational> candidates(std::uint64_t slot) const;

  const PartialFn& store() const { return store_; }
  const std::vector<Decision>& decisions() const { return decisions_; }
  const std::vector<RootSetEvent>& root_set_log() const { return log_; }
  const std::string& contradiction() const { return contradiction_; }
  std::size_t empty_root_sets() const { return empty_root_sets_; }

 private:
  struct Expr {
    std::uint64_t base;
    RationalFunction value;
  };
  enum class Applied { NoChange, Changed };

  Applied apply(std::size_t i);
  bool reconcile();
  void observe(std::uint64_t base, std::vector<Rational> roots,
               std::optional<Constraint> source, Polynomial equation);
  void resolve(std::uint64_t base, const Rational& value);
  std::vector<Rational> roots_of(std::uint64_t base,
                                 const RationalFunction& diff) const;
  std::optional<RationalFunction> term(std::uint64_t slot,
                                       std::uint64_t base) const;
  bool is_free(std::uint64_t slot) const;

  std::shared_ptr<const std::vector<Constraint>> constraints_;
  PartialFn store_;
  std::map<std::uint64_t, Expr> exprs_;
  std::map<std::uint64_t, std::vector<Rational>> candidates_;
  std::map<std::uint64_t, std::vector<Rational>> exceptional_;
  std::vector<std::uint64_t> equation_base_;
  std::vector<char> done_;
  std::vector<Decision> decisions_;
  std::vector<RootSetEvent> log_;
  std::string contradiction_;
  std::size_t empty_root_sets_ = 0;
};

struct SearchOptions {
  std::size_t branch_cap = kDefaultBranchCap;
};

struct SearchLeaf {
  std::vector<Decision> decisions;
  std::vector<std::pair<std::uint64_t, Rational>> values;  // n <= report bound
};

struct SearchReport {
  std::uint64_t horizon = 0;
  std::uint64_t report_bound = 0;
  std::size_t constraints = 0;
  std::size_t nodes = 0;
  std::size_t branch_points = 0;
  std::size_t contradictions = 0;
  std::size_t empty_root_sets = 0;
  std::vector<std::pair<std::uint64_t, Rational>> forced;
  std::vector<std::uint64_t> unforced;
  std::vector<SearchLeaf> leaves;
  std::vector<std::string> contradiction_log;
  std::vector<RootSetEvent> root_set_log;  // root node only

  std::optional<Rational> forced_value(std::uint64_t n) const;
  bool all_identity() const;
};

/// Exhaustive depth-first search. Throws BudgetExceeded past the cap and
/// InternalInconsistency if a surviving leaf violates a constraint.
SearchReport search(std::uint64_t horizon, std::uint64_t report_bound,
                    const SearchOptions& options = {});

/// Smallest horizon h in [max(report_bound, 3), limit] at which search
/// forces every f(n), n <= report_bound, or nullopt if none does. Found by
/// scanning upward; forcing is not assumed monotone in h.
std::optional<std::uint64_t> minimal_horizon(std::uint64_t report_bound,
                                             std::uint64_t limit,
                                             const SearchOptions& options = {});

/// Rebuilds a node from the root by replaying a decision list.
BranchNode replay_decisions(std::uint64_t horizon,
                            const std::vector<Decision>& decisions);

/// Constraints whose slots are all assigned in `store` but do not hold.
std::vector<Constraint> violated_constraints(
    const std::vector<Constraint>& constraints, const PartialFn& store);

}  // namespace sqcert
