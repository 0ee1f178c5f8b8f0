#include "surd/special.hpp"

#include <cmath>

#include "surd/errors.hpp"

namespace surd {

namespace {

constexpr double kLog2E = 1.4426950408889634;
constexpr int kGuardBits = 32;
constexpr int kMaxIterations = 200000;

// Modified Lentz evaluation of b0 + a1/(b1 + a2/(b2 + ...)). `coeffs(j, a, b)`
// fills the j-th partial numerator and denominator at working precision.
template <typename Coefficients>
HighPrecReal lentz(HighPrecReal b0, Coefficients coeffs, Precision wp) {
  const HighPrecReal tiny = ldexp(HighPrecReal(1L, wp), -4 * static_cast<long>(wp));
  const HighPrecReal one(1L, wp);
  const HighPrecReal eps = ldexp(one, -static_cast<long>(wp) + 2);
  HighPrecReal f = b0.is_zero() ? tiny : b0;
  HighPrecReal c = f;
  HighPrecReal d(wp);
  HighPrecReal a(wp);
  HighPrecReal b(wp);
  for (int j = 1; j < kMaxIterations; ++j) {
    coeffs(j, a, b);
    d = b + a * d;
    if (d.is_zero()) d = tiny;
    c = b + a / c;
    if (c.is_zero()) c = tiny;
    d = one / d;
    const HighPrecReal delta = c * d;
    f *= delta;
    if (abs(delta - one) < eps) return f;
  }
  throw InternalInvariant("continued fraction failed to converge");
}

bool erfc_uses_series(double x, Precision prec) {
  return x * x < std::max(9.0, static_cast<double>(prec) / 10.0);
}

bool e1_uses_series(double x, Precision prec) {
  return x < std::max(2.0, static_cast<double>(prec) / 24.0);
}

HighPrecReal erfc_series(const HighPrecReal& x, Precision prec) {
  // erf(x) = 2/sqrt(pi) e^{-x^2} sum_k 2^k x^{2k+1} / (2k+1)!!; all terms are
  // positive, the only loss is the final subtraction 1 - erf.
  const double xd = x.to_double();
  const Precision wp = prec + kGuardBits + static_cast<Precision>(std::ceil(xd * xd * kLog2E));
  const HighPrecReal xw = x.with_precision(wp);
  const HighPrecReal two_x2 = ldexp(xw * xw, 1);
  HighPrecReal term = xw;
  HighPrecReal sum = xw;
  for (long k = 1; k < kMaxIterations; ++k) {
    term *= two_x2;
    term /= HighPrecReal(2 * k + 1, wp);
    sum += term;
    if (ldexp(term, static_cast<long>(wp)) < sum) break;
  }
  const HighPrecReal erf = ldexp(exp(-(xw * xw)) * sum / sqrt(pi(wp)), 1);
  return (HighPrecReal(1L, wp) - erf).with_precision(prec);
}

HighPrecReal erfc_continued_fraction(const HighPrecReal& x, Precision prec) {
  const Precision wp = prec + kGuardBits;
  const HighPrecReal xw = x.with_precision(wp);
  const HighPrecReal f = lentz(
      xw,
      [&](int j, HighPrecReal& a, HighPrecReal& b) {
        a = ldexp(HighPrecReal(static_cast<long>(j), wp), -1);
        b = xw;
      },
      wp);
  return (exp(-(xw * xw)) / (sqrt(pi(wp)) * f)).with_precision(prec);
}

HighPrecReal e1_series(const HighPrecReal& x, Precision prec) {
  // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!); the alternating sum
  // peaks near e^x while the result decays like e^-x / x.
  const double xd = x.to_double();
  const Precision wp = prec + kGuardBits + static_cast<Precision>(std::ceil(2.0 * xd * kLog2E));
  const HighPrecReal xw = x.with_precision(wp);
  HighPrecReal power = xw;  // (-1)^(k+1) x^k / k!
  HighPrecReal sum = xw;    // sum (-1)^(k+1) x^k / (k k!)
  for (long k = 2; k < kMaxIterations; ++k) {
    power *= xw;
    power /= HighPrecReal(-k, wp);
    const HighPrecReal term = power / HighPrecReal(k, wp);
    sum += term;
    if (ldexp(abs(term), static_cast<long>(wp)) < abs(sum)) break;
  }
  return (sum - euler_gamma(wp) - log(xw)).with_precision(prec);
}

HighPrecReal e1_continued_fraction(const HighPrecReal& x, Precision prec) {
  // E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
  const Precision wp = prec + kGuardBits;
  const HighPrecReal xw = x.with_precision(wp);
  const HighPrecReal f = lentz(
      xw + HighPrecReal(1L, wp),
      [&](int j, HighPrecReal& a, HighPrecReal& b) {
        a = HighPrecReal(-static_cast<long>(j) * j, wp);
        b = xw + HighPrecReal(2L * j + 1, wp);
      },
      wp);
  return (exp(-xw) / f).with_precision(prec);
}

}  // namespace

HighPrecReal erfc_hp(const HighPrecReal& x, Precision prec) {
  if (x.is_zero()) return HighPrecReal(1L, prec);
  if (x.sign() < 0) {
    const HighPrecReal reflected = erfc_hp(-x, prec + 8);
    return (HighPrecReal(2L, prec + 8) - reflected).with_precision(prec);
  }
  if (erfc_uses_series(x.to_double(), prec)) return erfc_series(x, prec);
  return erfc_continued_fraction(x, prec);
}

HighPrecReal exp_int_e1(const HighPrecReal& x, Precision prec) {
  if (x.sign() <= 0) throw DomainError("E1 is defined for x > 0 only");
  if (e1_uses_series(x.to_double(), prec)) return e1_series(x, prec);
  return e1_continued_fraction(x, prec);
}

}  // namespace surd
