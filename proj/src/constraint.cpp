#include "sqcert/constraint.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace sqcert {

namespace {

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return __builtin_mul_overflow(a, b, &out);
}

}  // namespace

SumOfSquares make_sum_of_squares(std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
  std::array<std::uint64_t, 3> p{a, b, c};
  std::sort(p.begin(), p.end());
  if (p[0] == 0) throw std::invalid_argument("sum of squares with zero part");
  std::uint64_t total = 0;
  for (std::uint64_t x : p) {
    std::uint64_t sq = 0;
    if (mul_overflows(x, x, sq) || __builtin_add_overflow(total, sq, &total)) {
      throw std::invalid_argument("sum of squares overflows");
    }
  }
  return {p[0], p[1], p[2], total};
}

Coprime make_coprime(std::uint64_t m, std::uint64_t n) {
  std::uint64_t mn = 0;
  if (m < 1 || m >= n || std::gcd(m, n) != 1 || mul_overflows(m, n, mn)) {
    throw std::invalid_argument("coprime constraint needs 1 <= m < n, gcd 1");
  }
  return {m, n};
}

bool well_formed(const Constraint& c) {
  if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
    if (sos->a < 1 || sos->a > sos->b || sos->b > sos->c) return false;
    try {
      return make_sum_of_squares(sos->a, sos->b, sos->c).s == sos->s;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  const auto& cp = std::get<Coprime>(c);
  std::uint64_t mn = 0;
  return cp.m >= 1 && cp.m < cp.n && std::gcd(cp.m, cp.n) == 1 &&
         !mul_overflows(cp.m, cp.n, mn);
}

std::vector<std::uint64_t> slots(const Constraint& c) {
  std::vector<std::uint64_t> out;
  if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
    out = {sos->a, sos->b, sos->c, sos->s};
  } else {
    const auto& cp = std::get<Coprime>(c);
    out = {cp.m, cp.n, cp.m * cp.n};
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t top_slot(const Constraint& c) {
  if (const auto* sos = std::get_if<SumOfSquares>(&c)) return sos->s;
  return std::get<Coprime>(c).product();
}

std::string to_string(const Constraint& c) {
  if (const auto* sos = std::get_if<SumOfSquares>(&c)) {
    return "f(" + std::to_string(sos->s) + ") = f(" + std::to_string(sos->a) +
           ")^2 + f(" + std::to_string(sos->b) + ")^2 + f(" +
           std::to_string(sos->c) + ")^2";
  }
  const auto& cp = std::get<Coprime>(c);
  return "f(" + std::to_string(cp.product()) + ") = f(" + std::to_string(cp.m) +
         ") f(" + std::to_string(cp.n) + ")";
}

}  // namespace sqcert
