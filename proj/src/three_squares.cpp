#include "sqcert/three_squares.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace sqcert {

std::uint64_t isqrt(std::uint64_t n) {
  if (n < 2) return n;
  // Newton from above: 2^ceil(bits/2) >= sqrt(n), then decreases monotonically.
  std::uint64_t x = std::uint64_t{1} << ((std::bit_width(n) + 1) / 2);
  while (true) {
    const std::uint64_t y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

bool is_perfect_square(std::uint64_t n) {
  const std::uint64_t r = isqrt(n);
  return r * r == n;
}

SquareTable::SquareTable(std::uint64_t limit) : limit_(limit) {
  roots_.resize(limit + 1);
  std::uint64_t r = 0;
  for (std::uint64_t m = 0; m <= limit; ++m) {
    while ((r + 1) * (r + 1) <= m) ++r;
    roots_[m] = static_cast<std::uint32_t>(r);
  }
}

std::string Representation::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," +
         std::to_string(c) + ")";
}

namespace {

template <class Root>
std::optional<Representation> least_nonvanishing_impl(std::uint64_t n,
                                                      Root&& root) {
  for (std::uint64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::uint64_t b = a; a * a + 2 * b * b <= n; ++b) {
      const std::uint64_t rest = n - a * a - b * b;
      const std::uint64_t c = root(rest);
      if (c * c == rest && c >= b) return Representation{a, b, c};
    }
  }
  return std::nullopt;
}

template <class Root>
std::vector<Representation> representations_impl(std::uint64_t n,
                                                  bool nonvanishing,
                                                  Root&& root) {
  std::vector<Representation> out;
  const std::uint64_t lo = nonvanishing ? 1 : 0;
  for (std::uint64_t a = lo; 3 * a * a <= n; ++a) {
    for (std::uint64_t b = a; a * a + 2 * b * b <= n; ++b) {
      const std::uint64_t rest = n - a * a - b * b;
      const std::uint64_t c = root(rest);
      if (c * c == rest && c >= b) out.push_back({a, b, c});
    }
  }
  return out;
}

template <class Root>
ThreeSquaresClass classify_impl(std::uint64_t n, Root&& root) {
  if (n == 0) throw std::invalid_argument("classify requires n >= 1");
  if (auto form = legendre_form(n)) return *form;
  if (auto w = least_nonvanishing_impl(n, root)) {
    return NonvanishingRepresentable{*w};
  }
  for (std::uint64_t a = 1; 2 * a * a <= n; ++a) {
    const std::uint64_t rest = n - a * a;
    const std::uint64_t b = root(rest);
    if (b * b == rest) return TwoSquareOnly{a, b};
  }
  const std::uint64_t r = root(n);
  if (r * r == n) return PureSquareOnly{r};
  // Unreachable by Legendre's theorem; kept total for safety.
  throw std::logic_error("three-square classification fell through for " +
                         std::to_string(n));
}

}  // namespace

std::optional<NotRepresentable> legendre_form(std::uint64_t n) {
  if (n == 0) return std::nullopt;
  std::uint64_t s = 0;
  while (n % 4 == 0) {
    n /= 4;
    ++s;
  }
  if (n % 8 != 7) return std::nullopt;
  return NotRepresentable{s, (n - 7) / 8};
}

std::optional<Representation> least_nonvanishing(std::uint64_t n) {
  return least_nonvanishing_impl(n, [](std::uint64_t m) { return isqrt(m); });
}

std::optional<Representation> least_nonvanishing(std::uint64_t n,
                                                 const SquareTable& table) {
  return least_nonvanishing_impl(
      n, [&table](std::uint64_t m) { return table.root(m); });
}

ThreeSquaresClass classify(std::uint64_t n) {
  return classify_impl(n, [](std::uint64_t m) { return isqrt(m); });
}

ThreeSquaresClass classify(std::uint64_t n, const SquareTable& table) {
  return classify_impl(n, [&table](std::uint64_t m) { return table.root(m); });
}

std::vector<Representation> representations(std::uint64_t n,
                                            bool nonvanishing) {
  return representations_impl(n, nonvanishing,
                              [](std::uint64_t m) { return isqrt(m); });
}

std::vector<Representation> representations(std::uint64_t n, bool nonvanishing,
                                            const SquareTable& table) {
  return representations_impl(
      n, nonvanishing, [&table](std::uint64_t m) { return table.root(m); });
}

std::vector<std::uint64_t> verify_hurwitz(std::uint64_t limit) {
  const SquareTable table(limit);
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 1; m * m <= limit; ++m) {
    if (!least_nonvanishing(m * m, table)) out.push_back(m * m);
  }
  return out;
}

std::vector<std::uint64_t> hurwitz_exceptions(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 1; p <= limit; p *= 4) {
    out.push_back(p);
    if (25 * p <= limit) out.push_back(25 * p);
    if (p > limit / 4) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Representation five_power_representation(unsigned s) {
  if (s < 3) {
    throw std::invalid_argument(
        "five_power_representation requires s >= 3 (5 and 25 are bootstrap "
        "values)");
  }
  if (s > 27) throw std::invalid_argument("5^s overflows 64 bits");
  std::uint64_t power = 1;
  for (unsigned i = 0; i < s; ++i) power *= 5;
  if (s % 2 == 1) {
    std::uint64_t scale = 1;
    for (unsigned i = 0; i < (s - 3) / 2; ++i) scale *= 5;
    return {3 * scale, 4 * scale, 10 * scale};
  }
  auto rep = least_nonvanishing(power);
  if (!rep) {
    throw std::logic_error("5^" + std::to_string(s) +
                           " has no nonvanishing representation");
  }
  return *rep;
}

std::string describe(const ThreeSquaresClass& cls) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NonvanishingRepresentable>) {
          return "nonvanishing representable: " + v.witness.to_string();
        } else if constexpr (std::is_same_v<T, TwoSquareOnly>) {
          return "two squares only: " + std::to_string(v.a) + "^2+" +
                 std::to_string(v.b) + "^2";
        } else if constexpr (std::is_same_v<T, PureSquareOnly>) {
          return "pure square only: " + std::to_string(v.r) + "^2";
        } else {
          return "not representable: 4^" + std::to_string(v.s) + "*(8*" +
                 std::to_string(v.t) + "+7)";
        }
      },
      cls);
}

std::string class_tag(const ThreeSquaresClass& cls) {
  switch (cls.index()) {
    case 0: return "nonvanishing";
    case 1: return "two-square";
    case 2: return "pure-square";
    default: return "not-representable";
  }
}

}  // namespace sqcert
