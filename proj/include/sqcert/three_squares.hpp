#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sqcert {

/// Floor of the square root, integer arithmetic only.
std::uint64_t isqrt(std::uint64_t n);
bool is_perfect_square(std::uint64_t n);

/// Precomputed floor square roots for every m <= limit, shared by batch
/// enumerations over a range. Queries above the limit fall back to isqrt.
class SquareTable {
 public:
  explicit SquareTable(std::uint64_t limit);
  std::uint64_t limit() const { return limit_; }
  std::uint64_t root(std::uint64_t m) const {
    return m <= limit_ ? roots_[m] : isqrt(m);
  }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> roots_;
};

/// Unordered triple a <= b <= c with a^2 + b^2 + c^2 = value(). Parts are
/// positive for nonvanishing representations and may be 0 otherwise.
struct Representation {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;

  std::uint64_t value() const { return a * a + b * b + c * c; }
  bool nonvanishing() const { return a >= 1; }
  std::string to_string() const;

  friend auto operator<=>(const Representation&,
                          const Representation&) = default;
};

struct NonvanishingRepresentable {
  Representation witness;  // lexicographically least
  friend bool operator==(const NonvanishingRepresentable&,
                         const NonvanishingRepresentable&) = default;
};
/// Every representation has a zero part; a^2 + b^2 = n with 1 <= a <= b,
/// lexicographically least.
struct TwoSquareOnly {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  friend bool operator==(const TwoSquareOnly&, const TwoSquareOnly&) = default;
};
/// The only representation is r^2 + 0 + 0.
struct PureSquareOnly {
  std::uint64_t r = 0;
  friend bool operator==(const PureSquareOnly&,
                         const PureSquareOnly&) = default;
};
/// n = 4^s (8t + 7).
struct NotRepresentable {
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  friend bool operator==(const NotRepresentable&,
                         const NotRepresentable&) = default;
};

using ThreeSquaresClass = std::variant<NonvanishingRepresentable, TwoSquareOnly,
                                       PureSquareOnly, NotRepresentable>;

std::string describe(const ThreeSquaresClass& cls);
/// Short stable tag: "nonvanishing", "two-square", "pure-square",
/// "not-representable".
std::string class_tag(const ThreeSquaresClass& cls);

/// (s, t) with n = 4^s (8t + 7), or nullopt if n has no such form.
std::optional<NotRepresentable> legendre_form(std::uint64_t n);

/// Lexicographically least triple with all parts >= 1, if any.
std::optional<Representation> least_nonvanishing(std::uint64_t n);
std::optional<Representation> least_nonvanishing(std::uint64_t n,
                                                 const SquareTable& table);

/// Variant order: three nonvanishing, two nonzero, pure square, not
/// representable. Requires n >= 1.
ThreeSquaresClass classify(std::uint64_t n);
ThreeSquaresClass classify(std::uint64_t n, const SquareTable& table);

/// Complete, duplicate-free, lexicographically sorted list of triples.
std::vector<Representation> representations(std::uint64_t n, bool nonvanishing);
std::vector<Representation> representations(std::uint64_t n, bool nonvanishing,
                                            const SquareTable& table);

/// Squares m^2 <= limit with no nonvanishing representation, ascending.
std::vector<std::uint64_t> verify_hurwitz(std::uint64_t limit);
/// The predicted exceptional set {4^s} U {25 * 4^s} up to limit, ascending.
std::vector<std::uint64_t> hurwitz_exceptions(std::uint64_t limit);

/// Nonvanishing representation of 5^s for s >= 3 (throws
/// std::invalid_argument below that, or when 5^s overflows 64 bits).
/// Odd s scales (3, 4, 10); even s takes the least enumerated triple.
Representation five_power_representation(unsigned s);

}  // namespace sqcert
