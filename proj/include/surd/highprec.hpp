#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <mpfr.h>

#include "surd/bigint.hpp"

namespace surd {

using Precision = mpfr_prec_t;

// Working precision used for analytic quantities attached to N.
Precision default_precision(const BigInt& n);

// Multiple-precision real with a precision fixed at construction. Binary
// operations produce a result at the larger of the two operand precisions;
// nothing reads a process-wide default.
class HighPrecReal {
 public:
  explicit HighPrecReal(Precision prec);
  HighPrecReal(double value, Precision prec);
  HighPrecReal(long value, Precision prec);
  HighPrecReal(const BigInt& value, Precision prec);
  HighPrecReal(std::string_view decimal, Precision prec);

  HighPrecReal(const HighPrecReal& other);
  HighPrecReal(HighPrecReal&& other) noexcept;
  HighPrecReal& operator=(const HighPrecReal& other);
  HighPrecReal& operator=(HighPrecReal&& other) noexcept;
  ~HighPrecReal();

  Precision precision() const noexcept { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  // Re-rounds to a new precision.
  HighPrecReal with_precision(Precision prec) const;

  double to_double() const;
  // Scientific decimal with `digits` significant digits.
  std::string to_string(int digits) const;
  // Enough digits to round-trip at this precision.
  std::string to_string() const;

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  HighPrecReal& operator+=(const HighPrecReal& rhs);
  HighPrecReal& operator-=(const HighPrecReal& rhs);
  HighPrecReal& operator*=(const HighPrecReal& rhs);
  HighPrecReal& operator/=(const HighPrecReal& rhs);
  HighPrecReal operator-() const;

  friend HighPrecReal operator+(const HighPrecReal& a, const HighPrecReal& b);
  friend HighPrecReal operator-(const HighPrecReal& a, const HighPrecReal& b);
  friend HighPrecReal operator*(const HighPrecReal& a, const HighPrecReal& b);
  friend HighPrecReal operator/(const HighPrecReal& a, const HighPrecReal& b);

  friend bool operator==(const HighPrecReal& a, const HighPrecReal& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const HighPrecReal& a, const HighPrecReal& b);

 private:
  mpfr_t value_;
};

HighPrecReal abs(const HighPrecReal& x);
HighPrecReal sqrt(const HighPrecReal& x);
HighPrecReal log(const HighPrecReal& x);
HighPrecReal exp(const HighPrecReal& x);
HighPrecReal sin(const HighPrecReal& x);
HighPrecReal ldexp(const HighPrecReal& x, long exponent);
HighPrecReal pi(Precision prec);
HighPrecReal euler_gamma(Precision prec);
HighPrecReal sqrt(const BigInt& n, Precision prec);

// |a - b| / |b| (absolute difference when b is zero).
HighPrecReal relative_error(const HighPrecReal& a, const HighPrecReal& b);

}  // namespace surd
