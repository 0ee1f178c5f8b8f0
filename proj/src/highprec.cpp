#include "surd/highprec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surd/errors.hpp"

namespace surd {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

Precision max_prec(const HighPrecReal& a, const HighPrecReal& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

Precision default_precision(const BigInt& n) {
  return static_cast<Precision>(bit_length(n)) + 64;
}

HighPrecReal::HighPrecReal(Precision prec) {
  if (prec < MPFR_PREC_MIN) throw InvalidInput("precision must be positive");
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

HighPrecReal::HighPrecReal(double value, Precision prec) : HighPrecReal(prec) {
  mpfr_set_d(value_, value, kRound);
}

HighPrecReal::HighPrecReal(long value, Precision prec) : HighPrecReal(prec) {
  mpfr_set_si(value_, value, kRound);
}

HighPrecReal::HighPrecReal(const BigInt& value, Precision prec) : HighPrecReal(prec) {
  mpfr_set_z(value_, value.get_mpz_t(), kRound);
}

HighPrecReal::HighPrecReal(std::string_view decimal, Precision prec) : HighPrecReal(prec) {
  const std::string text(decimal);
  if (mpfr_set_str(value_, text.c_str(), 10, kRound) != 0) {
    throw InvalidInput("not a decimal real: '" + text + "'");
  }
}

HighPrecReal::HighPrecReal(const HighPrecReal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, kRound);
}

HighPrecReal::HighPrecReal(HighPrecReal&& other) noexcept {
  // Leave `other` as a valid minimal-precision zero so its destructor is safe.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

HighPrecReal& HighPrecReal::operator=(const HighPrecReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

HighPrecReal& HighPrecReal::operator=(HighPrecReal&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

HighPrecReal::~HighPrecReal() { mpfr_clear(value_); }

HighPrecReal HighPrecReal::with_precision(Precision prec) const {
  HighPrecReal out(prec);
  mpfr_set(out.value_, value_, kRound);
  return out;
}

double HighPrecReal::to_double() const { return mpfr_get_d(value_, kRound); }

std::string HighPrecReal::to_string(int digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Re", std::max(1, digits - 1), value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

std::string HighPrecReal::to_string() const {
  const int digits = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30102999566398120)) + 2;
  return to_string(digits);
}

HighPrecReal& HighPrecReal::operator+=(const HighPrecReal& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRound);
  mpfr_add(value_, value_, rhs.value_, kRound);
  return *this;
}

HighPrecReal& HighPrecReal::operator-=(const HighPrecReal& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRound);
  mpfr_sub(value_, value_, rhs.value_, kRound);
  return *this;
}

HighPrecReal& HighPrecReal::operator*=(const HighPrecReal& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRound);
  mpfr_mul(value_, value_, rhs.value_, kRound);
  return *this;
}

HighPrecReal& HighPrecReal::operator/=(const HighPrecReal& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRound);
  mpfr_div(value_, value_, rhs.value_, kRound);
  return *this;
}

HighPrecReal HighPrecReal::operator-() const {
  HighPrecReal out(precision());
  mpfr_neg(out.value_, value_, kRound);
  return out;
}

HighPrecReal operator+(const HighPrecReal& a, const HighPrecReal& b) {
  HighPrecReal out(max_prec(a, b));
  mpfr_add(out.value_, a.value_, b.value_, kRound);
  return out;
}

HighPrecReal operator-(const HighPrecReal& a, const HighPrecReal& b) {
  HighPrecReal out(max_prec(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, kRound);
  return out;
}

HighPrecReal operator*(const HighPrecReal& a, const HighPrecReal& b) {
  HighPrecReal out(max_prec(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, kRound);
  return out;
}

HighPrecReal operator/(const HighPrecReal& a, const HighPrecReal& b) {
  HighPrecReal out(max_prec(a, b));
  mpfr_div(out.value_, a.value_, b.value_, kRound);
  return out;
}

std::partial_ordering operator<=>(const HighPrecReal& a, const HighPrecReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_) != 0) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

HighPrecReal abs(const HighPrecReal& x) {
  HighPrecReal out(x.precision());
  mpfr_abs(out.get(), x.get(), kRound);
  return out;
}

HighPrecReal sqrt(const HighPrecReal& x) {
  HighPrecReal out(x.precision());
  mpfr_sqrt(out.get(), x.get(), kRound);
  return out;
}

HighPrecReal log(const HighPrecReal& x) {
  HighPrecReal out(x.precision());
  mpfr_log(out.get(), x.get(), kRound);
  return out;
}

HighPrecReal exp(const HighPrecReal& x) {
  HighPrecReal out(x.precision());
  mpfr_exp(out.get(), x.get(), kRound);
  return out;
}

HighPrecReal sin(const HighPrecReal& x) {
  HighPrecReal out(x.precision());
  mpfr_sin(out.get(), x.get(), kRound);
  return out;
}

HighPrecReal ldexp(const HighPrecReal& x, long exponent) {
  HighPrecReal out(x.precision());
  if (exponent >= 0) {
    mpfr_mul_2ui(out.get(), x.get(), static_cast<unsigned long>(exponent), kRound);
  } else {
    mpfr_div_2ui(out.get(), x.get(), static_cast<unsigned long>(-exponent), kRound);
  }
  return out;
}

HighPrecReal pi(Precision prec) {
  HighPrecReal out(prec);
  mpfr_const_pi(out.get(), kRound);
  return out;
}

HighPrecReal euler_gamma(Precision prec) {
  HighPrecReal out(prec);
  mpfr_const_euler(out.get(), kRound);
  return out;
}

HighPrecReal sqrt(const BigInt& n, Precision prec) {
  HighPrecReal out(prec);
  mpfr_set_z(out.get(), n.get_mpz_t(), kRound);
  mpfr_sqrt(out.get(), out.get(), kRound);
  return out;
}

HighPrecReal relative_error(const HighPrecReal& a, const HighPrecReal& b) {
  HighPrecReal diff = abs(a - b);
  if (b.is_zero()) return diff;
  return diff / abs(b);
}

}  // namespace surd
