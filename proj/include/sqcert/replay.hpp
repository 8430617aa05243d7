#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sqcert/certificate.hpp"
#include "sqcert/partial_fn.hpp"
#include "sqcert/polynomial.hpp"
#include "sqcert/three_squares.hpp"

namespace sqcert {

/// Induction branches in the order they are tried.
enum class Branch {
  Direct,            // (A) nonvanishing representation
  NotRepresentable,  // (B) 4^s (8t+7), via f(2m) and division by f(2)
  TwoSquare,         // (C) a^2 + b^2 only, via f(25n) or the 5-power split
  PureSquare,        // (D) 4^s, via f(3 * 4^s)
};

std::string branch_name(Branch b);

struct BranchHistogram {
  std::array<std::size_t, 4> counts{};
  std::size_t two_square_scaled = 0;      // (C) with 5 not dividing n
  std::size_t two_square_five_power = 0;  // (C) with 5 | n

  std::size_t& operator[](Branch b) { return counts[static_cast<int>(b)]; }
  std::size_t operator[](Branch b) const {
    return counts[static_cast<int>(b)];
  }
  std::size_t total() const;
};

/// Candidate sets for f(2) and f(5) as they shrink during the bootstrap.
struct BootstrapState {
  std::vector<std::vector<Rational>> f2_root_sets;
  std::vector<Rational> f2_candidates;
  std::vector<std::vector<Rational>> f5_root_sets;
  std::vector<Rational> f5_candidates;
};

/// Largest argument the bootstrap table covers completely.
inline constexpr std::uint64_t kBootstrapLimit = 15;

/// Runs the proof as a deterministic algorithm, one certificate step per
/// forced value. Holds the store and the certificate under construction.
class ReplayEngine {
 public:
  /// `bound` sizes the square-root table; values beyond it still work.
  explicit ReplayEngine(std::uint64_t bound);
  ReplayEngine(const ReplayEngine&) = delete;
  ReplayEngine& operator=(const ReplayEngine&) = delete;

  /// f(1) = 1 only.
  void axiom();
  /// Pins f(n) = n for n <= 15 and n in {21, 24, 25, 26, 27, 30, 50}.
  const BootstrapState& bootstrap();
  /// Derives f(n) = n for n >= 16, given f(k) = k for all k < n. Returns the
  /// steps appended by this call.
  std::vector<DerivationStep> induction_step(std::uint64_t n);

  Branch last_branch() const { return last_branch_; }
  const BranchHistogram& histogram() const { return histogram_; }
  const BootstrapState& bootstrap_state() const { return state_; }
  const PartialFn& store() const { return store_; }
  const CertificateBuilder& builder() const { return builder_; }

  /// Detaches the store from the builder and hands both out.
  PartialFn release_store();
  Certificate release_certificate(std::uint64_t bound);

 private:
  const Rational& require(std::uint64_t slot, std::uint64_t for_n) const;
  StepRef functional_equation(std::uint64_t a, std::uint64_t b,
                              std::uint64_t c, std::uint64_t for_n);
  StepRef multiplicativity(std::uint64_t m, std::uint64_t n,
                           std::uint64_t for_n);
  StepRef root_set(std::uint64_t slot, std::vector<Constraint> chain,
                   const Polynomial& scripted);
  StepRef intersection(std::uint64_t slot, std::vector<StepRef> root_sets);
  void establish(std::uint64_t n);

  SquareTable table_;
  CertificateBuilder builder_;
  PartialFn store_;
  BootstrapState state_;
  BranchHistogram histogram_;
  Branch last_branch_ = Branch::Direct;
};

struct BootstrapResult {
  PartialFn store;
  std::vector<DerivationStep> steps;
  BootstrapState state;
};

BootstrapResult bootstrap();

struct ReplaySummary {
  std::uint64_t bound = 0;
  std::size_t steps = 0;
  BranchHistogram histogram;
};

struct VerifyResult {
  PartialFn store;
  Certificate certificate;
  ReplaySummary summary;
};

/// Bootstrap, then induction for n = 16..N ascending. N = 1 yields the
/// axiom alone.
VerifyResult verify_up_to(std::uint64_t N);

}  // namespace sqcert
