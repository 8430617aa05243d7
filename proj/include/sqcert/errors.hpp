#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sqcert {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two derivations assign different values to the same argument.
class ConflictError : public Error {
 public:
  ConflictError(std::uint64_t n, const std::string& what)
      : Error(what), n_(n) {}
  std::uint64_t argument() const noexcept { return n_; }

 private:
  std::uint64_t n_;
};

/// An arithmetic self-check inside a scripted derivation failed.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// The induction needed a value below n that the store does not hold.
class HypothesisGap : public Error {
 public:
  HypothesisGap(std::uint64_t n, std::uint64_t missing)
      : Error("induction at " + std::to_string(n) + " needs f(" +
              std::to_string(missing) + "), which is not assigned"),
        n_(n),
        missing_(missing) {}
  std::uint64_t argument() const noexcept { return n_; }
  std::uint64_t missing() const noexcept { return missing_; }

 private:
  std::uint64_t n_;
  std::uint64_t missing_;
};

/// No induction branch applies to n.
class CaseFallthrough : public Error {
 public:
  explicit CaseFallthrough(std::uint64_t n)
      : Error("no induction branch applies to " + std::to_string(n)), n_(n) {}
  std::uint64_t argument() const noexcept { return n_; }

 private:
  std::uint64_t n_;
};

/// The solver explored more branch nodes than its cap allows.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t cap)
      : Error("branch cap of " + std::to_string(cap) + " nodes exceeded"),
        cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// Malformed certificate input. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Rational root search refused a polynomial whose coefficients are too
/// large to factor by trial division.
class RootSearchLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace sqcert
