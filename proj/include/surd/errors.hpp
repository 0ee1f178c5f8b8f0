#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace surd {

// Base class for every failure raised by the library. `kind()` is a stable
// machine-readable tag used by the CLI when it renders an error envelope.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error("invalid_input", what) {}
};

class PerfectSquare : public Error {
 public:
  explicit PerfectSquare(mpz_class root)
      : Error("perfect_square", "input is a perfect square of " + root.get_str()),
        root_(std::move(root)) {}
  const mpz_class& root() const noexcept { return root_; }

 private:
  mpz_class root_;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t budget, const std::string& what = "step budget exhausted")
      : Error("budget_exceeded", what + " (budget " + std::to_string(budget) + ")"),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

class InternalInvariant : public Error {
 public:
  explicit InternalInvariant(const std::string& what) : Error("internal_invariant", what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain_error", what) {}
};

class DiscriminantMismatch : public Error {
 public:
  explicit DiscriminantMismatch(const std::string& what) : Error("discriminant_mismatch", what) {}
};

class NotIndefinite : public Error {
 public:
  explicit NotIndefinite(const std::string& what) : Error("not_indefinite", what) {}
};

// Raised by two-squares operations when the period of sqrt(N) is even.
class EvenPeriod : public Error {
 public:
  explicit EvenPeriod(std::size_t tau)
      : Error("even_period", "period " + std::to_string(tau) + " is even"), tau_(tau) {}
  std::size_t tau() const noexcept { return tau_; }

 private:
  std::size_t tau_;
};

// Raised by the direct factoring path when the period is odd.
class OddPeriod : public Error {
 public:
  explicit OddPeriod(std::size_t tau)
      : Error("odd_period", "period " + std::to_string(tau) + " is odd"), tau_(tau) {}
  std::size_t tau() const noexcept { return tau_; }

 private:
  std::size_t tau_;
};

// gcd(y, N) > 1 while inverting; the gcd is itself a factor of N.
class NonInvertible : public Error {
 public:
  explicit NonInvertible(mpz_class g)
      : Error("non_invertible", "shares factor " + g.get_str() + " with the modulus"),
        factor_(std::move(g)) {}
  const mpz_class& factor() const noexcept { return factor_; }

 private:
  mpz_class factor_;
};

class TrivialSplit : public Error {
 public:
  TrivialSplit() : Error("trivial_split", "roots agree up to sign; no factor information") {}
};

// A factoring pathway ran to completion without a proper factor. The
// witness records whatever certifying data was gathered on the way.
class NoSplit : public Error {
 public:
  explicit NoSplit(const std::string& what, std::map<std::string, std::string> witness = {})
      : Error("no_split", what), witness_(std::move(witness)) {}
  const std::map<std::string, std::string>& witness() const noexcept { return witness_; }

 private:
  std::map<std::string, std::string> witness_;
};

}  // namespace surd
