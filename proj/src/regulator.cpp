#include "surd/regulator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "surd/cf.hpp"
#include "surd/errors.hpp"
#include "surd/special.hpp"

namespace surd {

namespace {

// Products are folded into the running log this often, well before the
// MPFR exponent range could matter.
constexpr std::size_t kFoldEvery = 4096;

bool square_free(const BigInt& n) {
  if (n < 1) return false;
  BigInt m = n;
  const unsigned long limit = m.fits_ulong_p() && m < BigInt(1000000000000UL) ? 0UL : 1000000UL;
  for (unsigned long p = 2;; ++p) {
    const BigInt pp = BigInt(p) * p;
    if (pp > m) break;
    if (limit != 0 && p > limit) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      if (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) return false;
    }
  }
  return true;
}

int chi(const BigInt& d, std::uint64_t x) {
  if (d.fits_slong_p()) return kronecker(static_cast<std::int64_t>(d.get_si()), x);
  return kronecker(d, BigInt(static_cast<unsigned long>(x)));
}

}  // namespace

RegulatorResult regulator_from_cf(const BigInt& n, Precision prec, std::optional<std::size_t> max_steps) {
  if (prec < 2) throw InvalidInput("precision must be at least 2 bits");
  SqrtExpansion walk(n);
  const std::size_t budget = max_steps.value_or(default_max_steps(n));
  const Precision wp = prec + 64;
  const HighPrecReal root = sqrt(n, wp);
  const BigInt end = 2 * walk.a0();

  HighPrecReal log_sum(wp);
  HighPrecReal product(1L, wp);
  BigInt r_prev = 1;
  std::size_t pending = 0;
  while (true) {
    const auto& t = walk.term();
    HighPrecReal q = root + HighPrecReal(t.c, wp);
    q *= q;
    product *= q;
    product /= HighPrecReal(BigInt(t.r * r_prev), wp);
    if (++pending == kFoldEvery) {
      log_sum += log(product);
      product = HighPrecReal(1L, wp);
      pending = 0;
    }
    r_prev = t.r;
    if (walk.steps() >= budget) throw BudgetExceeded(budget, "period not closed");
    walk.advance();
    if (walk.term().a == end) break;
  }
  log_sum += log(product);

  RegulatorResult out{ldexp(log_sum, -1).with_precision(prec), HighPrecReal(prec), walk.steps(), 1, 1};
  out.unit_norm = (out.tau % 2 == 0) ? 1 : -1;
  out.cycle_length = out.unit_norm == 1 ? out.r_star : ldexp(out.r_star, 1);
  return out;
}

PellUnit unit_from_cf(const BigInt& n, std::optional<std::size_t> max_steps) {
  const PeriodSummary p = expand_period(n, max_steps, 0);
  SqrtExpansion walk(n, ConvergentMode::exact);
  while (walk.steps() + 1 < p.tau) walk.advance();
  const auto& t = walk.term();
  return PellUnit{t.conv_a, t.conv_b, sgn(t.delta) < 0 ? -1 : 1};
}

const char* to_string(HRMethod m) { return m == HRMethod::lattice ? "lattice" : "fast"; }

BigInt discriminant_for(const BigInt& n) {
  if (n < 2) throw InvalidInput("N must be at least 2");
  return mod(n, 4) == 1 ? n : BigInt(4 * n);
}

bool is_valid_discriminant(const BigInt& d) {
  if (d < 5) return false;
  const BigInt r = mod(d, 4);
  if (r == 1) return !is_perfect_square(d) && square_free(d);
  if (r != 0) return false;
  const BigInt n = d / 4;
  const BigInt rn = mod(n, 4);
  return (rn == 2 || rn == 3) && square_free(n);
}

AnalyticHR hr_lattice_sum(const BigInt& d, Precision prec) {
  if (prec < 2) throw InvalidInput("precision must be at least 2 bits");
  if (d < 5 || !d.fits_ulong_p()) throw InvalidInput("discriminant out of range for the lattice sum");
  if (!is_valid_discriminant(d)) throw InvalidInput("not a fundamental discriminant: " + d.get_str());
  const std::uint64_t dd = d.get_ui();
  const Precision wp = prec + 32 + static_cast<Precision>(bit_length(d));
  const HighPrecReal step = pi(wp) / HighPrecReal(d, wp);

  // hR = ln(prod_{chi=-1} sin / prod_{chi=+1} sin).
  HighPrecReal log_sum(wp);
  HighPrecReal plus(1L, wp);
  HighPrecReal minus(1L, wp);
  HighPrecReal angle(wp);
  std::size_t terms = 0;
  std::size_t pending = 0;
  for (std::uint64_t k = 1; 2 * k <= dd - 1; ++k) {
    const int c = chi(d, k);
    if (c == 0) continue;
    mpfr_mul_ui(angle.get(), step.get(), k, MPFR_RNDN);
    const HighPrecReal s = sin(angle);
    if (c > 0) {
      plus *= s;
    } else {
      minus *= s;
    }
    ++terms;
    if (++pending == kFoldEvery) {
      log_sum += log(minus / plus);
      plus = HighPrecReal(1L, wp);
      minus = HighPrecReal(1L, wp);
      pending = 0;
    }
  }
  log_sum += log(minus / plus);
  return AnalyticHR{d, log_sum.with_precision(prec), prec, std::max<std::size_t>(terms, 1), HRMethod::lattice,
                    std::nullopt};
}

std::size_t fast_series_term_cap(const BigInt& d, Precision prec) {
  const double dd = d.get_d();
  const double target = static_cast<double>(prec) * std::numbers::ln2 + 2.0 * std::log(dd) + 10.0;
  return static_cast<std::size_t>(std::ceil(std::sqrt(dd * target / std::numbers::pi))) + 16;
}

AnalyticHR hr_fast_series(const BigInt& d, Precision prec, std::optional<std::size_t> max_terms) {
  if (prec < 2) throw InvalidInput("precision must be at least 2 bits");
  if (d < 5 || !d.fits_ulong_p()) throw InvalidInput("discriminant out of range for the series");
  if (!is_valid_discriminant(d)) throw InvalidInput("not a fundamental discriminant: " + d.get_str());
  const std::size_t cap = max_terms.value_or(fast_series_term_cap(d, prec));
  const Precision wp = prec + 32 + static_cast<Precision>(bit_length(d) / 2);
  const double dd = d.get_d();
  const HighPrecReal dr(d, wp);
  const HighPrecReal root_d = sqrt(dr);
  const HighPrecReal pi_over_d = pi(wp) / dr;
  const HighPrecReal root_pi_over_d = sqrt(pi_over_d);
  const double log_target = -static_cast<double>(prec) * std::numbers::ln2;

  HighPrecReal sum(wp);
  HighPrecReal y(wp);
  HighPrecReal z(wp);
  std::size_t terms = 0;
  for (std::uint64_t x = 1;; ++x) {
    if (x > cap) throw BudgetExceeded(cap, "fast series did not reach the tolerance");
    const int c = chi(d, x);
    if (c != 0) {
      mpfr_mul_ui(y.get(), root_pi_over_d.get(), x, MPFR_RNDN);
      mpfr_mul_ui(z.get(), pi_over_d.get(), x, MPFR_RNDN);
      mpfr_mul_ui(z.get(), z.get(), x, MPFR_RNDN);
      HighPrecReal term = root_d * erfc_hp(y, wp);
      mpfr_div_ui(term.get(), term.get(), x, MPFR_RNDN);
      term += exp_int_e1(z, wp);
      if (c > 0) {
        sum += term;
      } else {
        sum -= term;
      }
      ++terms;
    }
    // Bound on every later term, summed as a geometric tail.
    const double next = static_cast<double>(x + 1);
    const double expo = std::numbers::pi * next * next / dd;
    if (next * next * std::numbers::pi <= dd || sum.is_zero()) continue;
    const double log_bound = std::log(2.0 * dd / (std::numbers::pi * next * next)) - expo;
    const double q = std::exp(-2.0 * std::numbers::pi * next / dd);
    const double log_tail = log_bound - std::log1p(-q);
    const double log_sum = std::log(std::abs(sum.to_double()) / 2.0);
    if (log_tail - std::log(2.0) < log_sum + log_target) {
      AnalyticHR out{d, ldexp(sum, -1).with_precision(prec), prec, std::max<std::size_t>(terms, 1), HRMethod::fast,
                     std::nullopt};
      out.tail_bound = HighPrecReal(std::exp(log_bound), 64);
      return out;
    }
  }
}

Reconciliation reconcile(const AnalyticHR& hr, const RegulatorResult& reg, const ReconcileOptions& options) {
  if (reg.r_star.sign() <= 0) throw DomainError("R* must be positive");
  const double ratio = (hr.hr / reg.r_star).to_double();
  Reconciliation best;
  best.ratio = ratio;
  best.distance = std::numeric_limits<double>::infinity();
  const int base[] = {1, 3};
  const int wide[] = {1, 3, 2, 6};
  const std::span<const int> candidates = options.extended ? std::span<const int>(wide) : std::span<const int>(base);
  for (const int s : candidates) {
    const double v = s * ratio;
    const double k = std::round(v);
    const double dist = std::abs(v - k);
    if (k >= 1.0 && dist < options.tolerance) {
      return Reconciliation{static_cast<long>(k), s, ratio, dist, true};
    }
    if (dist < best.distance) {
      best.distance = dist;
      best.numerator = static_cast<long>(k);
      best.multiplier = s;
    }
  }
  return best;
}

}  // namespace surd
