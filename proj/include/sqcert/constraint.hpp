#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace sqcert {

/// f(s) = f(a)^2 + f(b)^2 + f(c)^2 with a <= b <= c and s = a^2 + b^2 + c^2.
struct SumOfSquares {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t s = 0;
  friend auto operator<=>(const SumOfSquares&, const SumOfSquares&) = default;
};

/// f(mn) = f(m) f(n) with m < n and gcd(m, n) = 1.
struct Coprime {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t product() const { return m * n; }
  friend auto operator<=>(const Coprime&, const Coprime&) = default;
};

using Constraint = std::variant<SumOfSquares, Coprime>;

/// Builds a SumOfSquares after sorting the parts; throws
/// std::invalid_argument on a zero part or overflow.
SumOfSquares make_sum_of_squares(std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c);
/// Throws std::invalid_argument unless 1 <= m < n and gcd(m, n) = 1.
Coprime make_coprime(std::uint64_t m, std::uint64_t n);

/// Structural validity: ordering, positivity, the stored sum, coprimality.
bool well_formed(const Constraint& c);

/// Distinct arguments the constraint mentions, ascending.
std::vector<std::uint64_t> slots(const Constraint& c);
/// The largest argument mentioned (s or mn).
std::uint64_t top_slot(const Constraint& c);

std::string to_string(const Constraint& c);

}  // namespace sqcert
