#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sqcert/rational.hpp"

namespace sqcert {

/// Index of the certificate step that established a value.
using StepRef = std::size_t;
inline constexpr StepRef kNoStep = std::numeric_limits<StepRef>::max();

/// A value the closure inferred from two others.
struct Inference {
  enum class Kind { Multiplicativity, Division };
  Kind kind;
  std::uint64_t target;
  Rational value;
  /// Multiplicativity: factors m < n (target = m n).
  /// Division: (dividend, divisor), target = dividend / divisor.
  std::uint64_t first;
  std::uint64_t second;
  StepRef first_ref;
  StepRef second_ref;
};

std::vector<std::uint64_t> unitary_divisors(std::uint64_t n);

/// Sparse, exact store for a partially known multiplicative function.
///
/// Every assignment runs the closure to a fixed point:
///   - coprime m, n assigned and m n <= product_horizon  =>  f(mn) = f(m) f(n)
///   - mn and m assigned, gcd(m, n) = 1, f(m) != 0        =>  f(n) = f(mn)/f(m)
/// Any triple (m, n, mn) with all three assigned is checked for consistency.
/// The work-list processes smallest arguments first and divisors smallest
/// first, so inference order (and therefore certificate order) is fixed.
class PartialFn {
 public:
  using Sink = std::function<StepRef(const Inference&)>;

  explicit PartialFn(std::uint64_t product_horizon, Sink sink = {});

  /// Records f(n) = v. Returns false when n already held v. Throws
  /// ConflictError on a different existing value or an inconsistent closure.
  bool assign(std::uint64_t n, const Rational& v, StepRef provenance = kNoStep);

  /// Re-runs the closure over every stored value. Needed only after the
  /// horizon is raised; assign keeps the fixed point otherwise.
  void closure();

  std::optional<Rational> lookup(std::uint64_t n) const;
  const Rational* find(std::uint64_t n) const;
  bool contains(std::uint64_t n) const { return values_.count(n) != 0; }
  StepRef provenance(std::uint64_t n) const;

  std::size_t size() const { return values_.size(); }
  std::uint64_t product_horizon() const { return horizon_; }
  void set_product_horizon(std::uint64_t h) { horizon_ = h; }
  void set_sink(Sink sink) { sink_ = std::move(sink); }

  /// All (n, value) pairs ascending by n.
  std::vector<std::pair<std::uint64_t, Rational>> entries() const;
  /// Sorted "n = p/q" lines.
  std::string to_table() const;

 private:
  struct Entry {
    Rational value;
    StepRef provenance;
  };

  void insert(std::uint64_t n, Rational v, StepRef provenance);
  void infer(Inference inference);
  void check_product(std::uint64_t m, std::uint64_t n, std::uint64_t mn) const;
  void drain();
  void process(std::uint64_t k);

  std::uint64_t horizon_;
  Sink sink_;
  std::unordered_map<std::uint64_t, Entry> values_;
  std::uint64_t max_key_ = 0;
  std::priority_queue<std::uint64_t, std::vector<std::uint64_t>,
                      std::greater<>>
      pending_;
};

}  // namespace sqcert
