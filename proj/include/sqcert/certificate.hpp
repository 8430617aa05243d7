#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqcert/constraint.hpp"
#include "sqcert/partial_fn.hpp"
#include "sqcert/rational.hpp"

namespace sqcert {

/// f(1) = 1.
struct AxiomStep {
  friend bool operator==(const AxiomStep&, const AxiomStep&) = default;
};
/// f(a^2+b^2+c^2) = f(a)^2 + f(b)^2 + f(c)^2; refs cite a, b, c in order.
struct FunctionalEquationStep {
  std::uint64_t a = 0, b = 0, c = 0;
  friend bool operator==(const FunctionalEquationStep&,
                         const FunctionalEquationStep&) = default;
};
/// f(mn) = f(m) f(n), m < n coprime; refs cite m, n.
struct MultiplicativityStep {
  std::uint64_t m = 0, n = 0;
  friend bool operator==(const MultiplicativityStep&,
                         const MultiplicativityStep&) = default;
};
/// f(n) = f(dividend) / f(divisor); refs cite dividend, divisor.
struct DivisionStep {
  std::uint64_t dividend = 0, divisor = 0;
  friend bool operator==(const DivisionStep&, const DivisionStep&) = default;
};
/// Candidate values for the target slot x = f(target). The chain is read in
/// order: each constraint but the last defines exactly one new slot as a
/// rational function of x; the last one closes an equation in x. refs cite
/// the known values the chain uses, ascending by argument.
struct RootSetStep {
  std::vector<Constraint> chain;
  std::vector<Rational> roots;  // ascending
  friend bool operator==(const RootSetStep&, const RootSetStep&) = default;
};
/// The root sets cited by refs (ascending indices, same target) intersect
/// in exactly the step's value.
struct IntersectionStep {
  friend bool operator==(const IntersectionStep&,
                         const IntersectionStep&) = default;
};

using StepKind = std::variant<AxiomStep, FunctionalEquationStep,
                              MultiplicativityStep, DivisionStep, RootSetStep,
                              IntersectionStep>;

std::string kind_name(const StepKind& kind);

struct DerivationStep {
  std::size_t index = 0;
  std::uint64_t target = 0;
  std::optional<Rational> value;  // absent only for root sets
  StepKind kind;
  std::vector<StepRef> refs;
  friend bool operator==(const DerivationStep&,
                         const DerivationStep&) = default;
};

struct CertificateHeader {
  std::uint64_t bound = 0;
  std::string engine;
  std::vector<std::string> flags;
  friend bool operator==(const CertificateHeader&,
                         const CertificateHeader&) = default;
};

struct Certificate {
  CertificateHeader header;
  std::vector<DerivationStep> steps;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Engine identification written into every header.
std::string engine_version();
/// Canonicalization flags the replay engine guarantees.
std::vector<std::string> canonical_flags();

/// Append-only step list. Also usable as a PartialFn inference sink.
class CertificateBuilder {
 public:
  StepRef append(DerivationStep step);
  StepRef record(const Inference& inference);
  PartialFn::Sink sink();

  const std::vector<DerivationStep>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  Certificate finish(std::uint64_t bound) &&;

 private:
  std::vector<DerivationStep> steps_;
};

/// Line-delimited JSON: header line, then one step per line, fixed key
/// order, rationals as "p/q" strings. Every line ends in '\n'.
std::string serialize(const Certificate& cert);
std::string serialize_step(const DerivationStep& step);
/// Throws ParseError (1-based line number) on malformed input.
Certificate deserialize(std::string_view text);

void write_certificate(const std::string& path, const Certificate& cert);
/// Throws std::runtime_error if unreadable, ParseError if malformed.
Certificate read_certificate(const std::string& path);

struct CheckReport {
  bool valid = false;
  std::optional<std::size_t> failing_step;
  std::string reason;
  std::size_t steps_checked = 0;
};

/// Re-verifies every step from scratch by direct arithmetic. Depends on
/// nothing but the certificate itself.
CheckReport check(const Certificate& cert);
/// Parses then checks; parse failures are reported as invalid.
CheckReport check_text(std::string_view text);

}  // namespace sqcert
