// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "sqcert/certificate.hpp"
#include "sqcert/cli.hpp"
#include "sqcert/replay.hpp"
#include "sqcert/solver.hpp"
#include "sqcert/three_squares.hpp"

using namespace sqcert;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": "
            << detail << std::endl;
}

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << " s";
  return os.str();
}

std::vector<Rational> ints(std::initializer_list<std::int64_t> v) {
  return {v.begin(), v.end()};
}

void bootstrap_table() {
  const auto t = Clock::now();
  std::ostringstream out, err;
  const int code = cli::run({"--format", "json", "verify", "--max", "15"}, out, err);
  const double secs = since(t);
  bool ok = code == 0;
  std::string detail;
  if (ok) {
    const auto doc = nlohmann::json::parse(out.str());
    const auto& values = doc["result"]["values"];
    for (int n = 1; n <= 15 && ok; ++n) {
      ok = values.value(std::to_string(n), "") == std::to_string(n);
    }
    ok = ok && values.value("25", "") == "25";
  }
  ok = ok && secs < 1.0;
  report(1, "bootstrap table", ok,
         "f(n)=n for n<=15 and n=25 in " + fmt_seconds(secs));
}

void full_replay() {
  const std::uint64_t N = 100000;
  const auto t = Clock::now();
  bool ok = true;
  std::string detail;
  try {
    const VerifyResult r = verify_up_to(N);
    const double replay = since(t);
    for (std::int64_t n = 1; n <= static_cast<std::int64_t>(N) && ok; ++n) {
      ok = r.store.lookup(n) == Rational(n);
    }
    const auto tc = Clock::now();
    const CheckReport c = check_text(serialize(r.certificate));
    const double checking = since(tc);
    ok = ok && c.valid && since(t) < 30.0;
    detail = std::to_string(r.summary.steps) + " steps, replay " +
             fmt_seconds(replay) + ", check " + fmt_seconds(checking) +
             (c.valid ? "" : ", check failed: " + c.reason);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(2, "full replay to 1e5", ok, detail);
}

void hurwitz() {
  const std::uint64_t L = 1000000;
  std::vector<std::uint64_t> expected;
  for (std::uint64_t p = 1; p <= L; p *= 4) {
    expected.push_back(p);
    if (25 * p <= L) expected.push_back(25 * p);
  }
  std::sort(expected.begin(), expected.end());
  const auto found = verify_hurwitz(L);
  report(3, "Hurwitz exceptions to 1e6", found == expected,
         std::to_string(found.size()) + " exceptions, expected " +
             std::to_string(expected.size()));
}

void legendre() {
  std::size_t mismatches = 0;
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    const bool not_rep = std::holds_alternative<NotRepresentable>(classify(n));
    if (not_rep != oracle::triples(n, false).empty()) ++mismatches;
  }
  report(4, "Legendre consistency to 1e4", mismatches == 0,
         std::to_string(mismatches) + " mismatches against brute force");
}

void branch_points() {
  const SearchReport r = search(30, 15);
  std::vector<std::vector<Rational>> f2, f5;
  std::vector<Rational> f2_final, f5_final;
  for (const auto& e : r.root_set_log) {
    if (e.slot == 2) {
      f2.push_back(e.roots);
      f2_final = e.candidates;
    }
    if (e.slot == 5) {
      f5.push_back(e.roots);
      f5_final = e.candidates;
    }
  }
  const bool ok = !f2.empty() && f2.front() == ints({1, 2}) &&
                  f2_final == ints({2}) &&
                  f5 == std::vector<std::vector<Rational>>{ints({-5, 5}),
                                                           ints({1, 5})} &&
                  f5_final == ints({5});
  report(5, "branch-point fidelity", ok,
         "f(2): first root set {1,2}, final {" +
             (f2_final.empty() ? "" : f2_final.front().to_display()) +
             "}; f(5): {-5,5} and {1,5}, final {" +
             (f5_final.empty() ? "" : f5_final.front().to_display()) + "}");
}

void oracle_equivalence() {
  const auto t = Clock::now();
  bool ok = true;
  std::string detail;
  try {
    const SearchReport r = search(200, 100);
    const double secs = since(t);
    const VerifyResult v = verify_up_to(100);
    std::size_t agree = 0;
    for (const auto& [n, value] : r.forced) {
      if (v.store.lookup(n) == value) ++agree;
    }
    ok = r.all_identity() && agree == r.forced.size() && secs < 10.0 &&
         r.nodes < kDefaultBranchCap;
    detail = std::to_string(r.forced.size()) + " forced, " +
             std::to_string(agree) + " agree with replay, " +
             std::to_string(r.nodes) + " nodes, " + fmt_seconds(secs);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(6, "solver/replay equivalence", ok, detail);
}

// Single-field mutation of one step line.
class Mutator {
 public:
  explicit Mutator(std::uint64_t seed) : rng_(seed) {}

  std::string mutate(const std::string& line) {
    nlohmann::ordered_json step = nlohmann::ordered_json::parse(line);
    std::vector<std::string> fields;
    for (const auto& item : step.items()) fields.push_back(item.key());
    const std::string key = fields[pick(fields.size())];
    auto& v = step[key];
    if (key == "kind") {
      static const std::vector<std::string> kinds{
          "axiom",    "functional_equation", "multiplicativity",
          "division", "root_set",            "intersection"};
      std::string k;
      do k = kinds[pick(kinds.size())]; while (k == v.get<std::string>());
      v = k;
    } else if (key == "value") {
      v = other_rational(v.is_null() ? std::string() : v.get<std::string>());
    } else if (key == "chain") {
      auto& c = v[pick(v.size())];
      auto& nums = c.contains("parts") ? c["parts"] : c["factors"];
      bump(nums[pick(nums.size())]);
    } else if (key == "roots") {
      const int op = v.empty() ? 0 : static_cast<int>(pick(3));
      if (op == 0) {
        v.push_back(other_rational(""));
      } else if (op == 1) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(pick(v.size())));
      } else {
        auto& r = v[pick(v.size())];
        r = other_rational(r.get<std::string>());
      }
    } else if (key == "refs") {
      const int op = v.empty() ? 0 : static_cast<int>(pick(3));
      if (op == 0) {
        v.push_back(pick(step["index"].get<std::size_t>() + 1));
      } else if (op == 1) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(pick(v.size())));
      } else {
        bump(v[pick(v.size())]);
      }
    } else if (v.is_array()) {
      bump(v[pick(v.size())]);
    } else {
      bump(v);
    }
    return step.dump();
  }

 private:
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  void bump(nlohmann::ordered_json& x) {
    const auto old = x.get<std::int64_t>();
    std::int64_t delta = 0;
    while (delta == 0 || old + delta < 0) {
      delta = std::uniform_int_distribution<std::int64_t>(-3, 3)(rng_);
    }
    x = old + delta;
  }
  std::string other_rational(const std::string& old) {
    std::string s;
    do {
      const auto num = std::uniform_int_distribution<std::int64_t>(-60, 1100)(rng_);
      const auto den = std::uniform_int_distribution<std::int64_t>(1, 3)(rng_);
      s = Rational(num, den).to_string();
    } while (s == old);
    return s;
  }
  std::mt19937_64 rng_;
};

void robustness() {
  const std::uint64_t seed = 0x5EC0DE;
  const std::string text = serialize(verify_up_to(1000).certificate);
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);

  Mutator m(seed);
  std::mt19937_64 pick(seed ^ 0x9E3779B97F4A7C15ull);
  std::size_t accepted = 0, tried = 0;
  std::string first_accept;
  while (tried < 1000) {
    const std::size_t at =
        1 + std::uniform_int_distribution<std::size_t>(0, lines.size() - 2)(pick);
    const std::string mutated = m.mutate(lines[at]);
    if (mutated == lines[at]) continue;
    ++tried;
    std::string doc;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      doc += (i == at ? mutated : lines[i]) + "\n";
    }
    if (check_text(doc).valid) {
      if (accepted++ == 0) first_accept = "line " + std::to_string(at + 1) + ": " + mutated;
    }
  }
  std::ostringstream seed_hex;
  seed_hex << std::hex << seed;
  report(7, "certificate robustness", accepted == 0,
         std::to_string(tried) + " mutations (seed 0x" + seed_hex.str() + "), " +
             std::to_string(accepted) + " accepted" +
             (first_accept.empty() ? "" : "; first: " + first_accept));
}

void determinism() {
  const std::string a = "acceptance_a.sqcert.jsonl";
  const std::string b = "acceptance_b.sqcert.jsonl";
  std::ostringstream out, err;
  const int ca = cli::run({"verify", "--max", "1000", "--out", a}, out, err);
  const int cb = cli::run({"verify", "--max", "1000", "--out", b}, out, err);
  auto slurp = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  };
  const std::string sa = slurp(a), sb = slurp(b);
  const bool ok = ca == 0 && cb == 0 && !sa.empty() && sa == sb;
  report(8, "determinism", ok,
         std::to_string(sa.size()) + " bytes, " + (sa == sb ? "identical" : "differ"));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

}  // namespace

int main() {
  bootstrap_table();
  full_replay();
  hurwitz();
  legendre();
  branch_points();
  oracle_equivalence();
  robustness();
  determinism();
  return failures == 0 ? 0 : 1;
}
