#include "sqcert/partial_fn.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sqcert/errors.hpp"

namespace sqcert {

std::vector<std::uint64_t> unitary_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> prime_powers;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    std::uint64_t q = 1;
    while (n % p == 0) {
      n /= p;
      q *= p;
    }
    prime_powers.push_back(q);
  }
  if (n > 1) prime_powers.push_back(n);
  std::vector<std::uint64_t> divisors{1};
  for (std::uint64_t q : prime_powers) {
    const std::size_t k = divisors.size();
    for (std::size_t i = 0; i < k; ++i) divisors.push_back(divisors[i] * q);
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

PartialFn::PartialFn(std::uint64_t product_horizon, Sink sink)
    : horizon_(product_horizon), sink_(std::move(sink)) {}

std::optional<Rational> PartialFn::lookup(std::uint64_t n) const {
  auto it = values_.find(n);
  if (it == values_.end()) return std::nullopt;
  return it->second.value;
}

const Rational* PartialFn::find(std::uint64_t n) const {
  auto it = values_.find(n);
  return it == values_.end() ? nullptr : &it->second.value;
}

StepRef PartialFn::provenance(std::uint64_t n) const {
  auto it = values_.find(n);
  return it == values_.end() ? kNoStep : it->second.provenance;
}

bool PartialFn::assign(std::uint64_t n, const Rational& v, StepRef provenance) {
  if (n == 0) throw std::invalid_argument("f is defined on positive integers");
  if (const Rational* old = find(n)) {
    if (*old != v) {
      throw ConflictError(n, "f(" + std::to_string(n) + ") = " +
                                 old->to_display() + " conflicts with " +
                                 v.to_display());
    }
    return false;
  }
  if (n == 1 && v != Rational(1)) {
    throw ConflictError(1, "a multiplicative function has f(1) = 1");
  }
  insert(n, v, provenance);
  drain();
  return true;
}

void PartialFn::closure() {
  std::vector<std::uint64_t> keys;
  keys.reserve(values_.size());
  for (const auto& [k, e] : values_) keys.push_back(k);
  for (std::uint64_t k : keys) pending_.push(k);
  drain();
}

void PartialFn::insert(std::uint64_t n, Rational v, StepRef provenance) {
  values_.emplace(n, Entry{std::move(v), provenance});
  max_key_ = std::max(max_key_, n);
  pending_.push(n);
}

void PartialFn::infer(Inference inference) {
  const StepRef ref = sink_ ? sink_(inference) : kNoStep;
  insert(inference.target, std::move(inference.value), ref);
}

void PartialFn::check_product(std::uint64_t m, std::uint64_t n,
                              std::uint64_t mn) const {
  const Rational& fm = *find(m);
  const Rational& fn = *find(n);
  const Rational& fmn = *find(mn);
  if (fmn != fm * fn) {
    throw ConflictError(
        mn, "f(" + std::to_string(mn) + ") = " + fmn.to_display() +
                " but f(" + std::to_string(m) + ") f(" + std::to_string(n) +
                ") = " + (fm * fn).to_display());
  }
}

void PartialFn::drain() {
  while (!pending_.empty()) {
    const std::uint64_t k = pending_.top();
    pending_.pop();
    process(k);
  }
}

void PartialFn::process(std::uint64_t k) {
  if (k == 1) return;
  // k as a product d * (k / d) of coprime parts.
  for (std::uint64_t d : unitary_divisors(k)) {
    if (d == 1 || d == k) continue;
    const std::uint64_t e = k / d;
    const Rational* fd = find(d);
    if (fd == nullptr) continue;
    if (contains(e)) {
      check_product(std::min(d, e), std::max(d, e), k);
    } else if (!fd->is_zero()) {
      infer({Inference::Kind::Division, e, *find(k) / *fd, k, d, provenance(k),
             provenance(d)});
    }
  }
  // k as a factor of k * j with gcd(k, j) = 1.
  const std::uint64_t reach = std::max(max_key_, horizon_) / k;
  for (std::uint64_t j = 2; j <= reach; ++j) {
    const std::uint64_t kj = k * j;
    const bool have_j = contains(j);
    const bool have_kj = contains(kj);
    if (!have_j && !have_kj) continue;
    if (std::gcd(k, j) != 1) continue;
    if (have_j && have_kj) {
      check_product(std::min(k, j), std::max(k, j), kj);
    } else if (have_j) {
      if (kj <= horizon_) {
        const std::uint64_t m = std::min(k, j), n = std::max(k, j);
        infer({Inference::Kind::Multiplicativity, kj, *find(m) * *find(n), m,
               n, provenance(m), provenance(n)});
      }
    } else {
      const Rational& fk = *find(k);
      if (!fk.is_zero()) {
        infer({Inference::Kind::Division, j, *find(kj) / fk, kj, k,
               provenance(kj), provenance(k)});
      }
    }
  }
}

std::vector<std::pair<std::uint64_t, Rational>> PartialFn::entries() const {
  std::vector<std::pair<std::uint64_t, Rational>> out;
  out.reserve(values_.size());
  for (const auto& [k, e] : values_) out.emplace_back(k, e.value);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::string PartialFn::to_table() const {
  std::ostringstream os;
  for (const auto& [n, v] : entries()) os << n << " = " << v.to_string() << "\n";
  return os.str();
}

}  // namespace sqcert
