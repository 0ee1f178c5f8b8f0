#include <doctest.h>

#include "surd/cf.hpp"
#include "surd/errors.hpp"
#include "surd/oracles.hpp"
#include "surd/regulator.hpp"

using namespace surd;

namespace {

constexpr Precision kPrec = 160;

// ln(a + b sqrt N) evaluated directly.
HighPrecReal log_unit(const PellUnit& u, const BigInt& n, Precision prec) {
  return log(HighPrecReal(u.a, prec) + HighPrecReal(u.b, prec) * sqrt(n, prec));
}

double rel(const HighPrecReal& a, const HighPrecReal& b) { return std::abs(((a - b) / b).to_double()); }

}  // namespace

TEST_SUITE("regulator") {
  TEST_CASE("R* of 21 and 2") {
    const RegulatorResult r21 = regulator_from_cf(BigInt(21), kPrec);
    CHECK(std::abs(r21.r_star.to_double() - 4.700397710917) < 1e-11);
    CHECK(r21.tau == 6);
    CHECK(r21.unit_norm == 1);
    CHECK(r21.cycle_length.to_double() == doctest::Approx(r21.r_star.to_double()));
    const RegulatorResult r2 = regulator_from_cf(BigInt(2), kPrec);
    CHECK(std::abs(r2.r_star.to_double() - 0.881373587019543) < 1e-14);
    CHECK(r2.unit_norm == -1);
    CHECK(r2.cycle_length.to_double() == doctest::Approx(2 * 0.881373587019543));
    CHECK_THROWS_AS(regulator_from_cf(BigInt(21), 1), InvalidInput);
    CHECK_THROWS_AS(regulator_from_cf(BigInt(4633), kPrec, 3), BudgetExceeded);
  }

  TEST_CASE("R* is the log of the fundamental unit") {
    for (unsigned long nn = 2; nn <= 600; ++nn) {
      const BigInt n(nn);
      if (is_perfect_square(n)) continue;
      CAPTURE(nn);
      const PellUnit u = unit_from_cf(n);
      const PellUnit want = oracles::pell_chakravala(n).output;
      REQUIRE(u.a == want.a);
      REQUIRE(u.b == want.b);
      REQUIRE(u.norm == want.norm);
      const RegulatorResult r = regulator_from_cf(n, kPrec);
      REQUIRE(rel(r.r_star, log_unit(u, n, kPrec + 32)) < 1e-45);
      REQUIRE(r.unit_norm == u.norm);
    }
  }

  TEST_CASE("discriminants") {
    CHECK(discriminant_for(BigInt(21)) == 21);
    CHECK(discriminant_for(BigInt(2)) == 8);
    CHECK(discriminant_for(BigInt(7)) == 28);
    CHECK(is_valid_discriminant(BigInt(8)));
    CHECK(is_valid_discriminant(BigInt(21)));
    CHECK(is_valid_discriminant(BigInt(84)) == false);
    CHECK(is_valid_discriminant(BigInt(45)) == false);
    CHECK(is_valid_discriminant(BigInt(9)) == false);
  }

  TEST_CASE("lattice sum and fast series") {
    const AnalyticHR l8 = hr_lattice_sum(BigInt(8), kPrec);
    CHECK(std::abs(l8.hr.to_double() - 0.881373587019543) < 1e-14);
    const AnalyticHR l21 = hr_lattice_sum(BigInt(21), kPrec);
    CHECK(std::abs(l21.hr.to_double() - 4.700397710917 / 3) < 1e-11);
    for (unsigned long d : {8UL, 12UL, 21UL, 24UL, 28UL, 316UL, 4633UL, 18556UL, 40009UL}) {
      CAPTURE(d);
      REQUIRE(is_valid_discriminant(BigInt(d)));
      const AnalyticHR l = hr_lattice_sum(BigInt(d), 100);
      const AnalyticHR f = hr_fast_series(BigInt(d), 100);
      CHECK(f.method == HRMethod::fast);
      CHECK(rel(f.hr, l.hr) < 1e-20);
      REQUIRE(f.tail_bound.has_value());
    }
  }

  TEST_CASE("non-fundamental discriminants are rejected") {
    CHECK_THROWS_AS(hr_lattice_sum(BigInt(84), kPrec), InvalidInput);
    CHECK_THROWS_AS(hr_fast_series(BigInt(84), kPrec), InvalidInput);
    CHECK_THROWS_AS(hr_fast_series(BigInt(72), kPrec), InvalidInput);
  }

  TEST_CASE("fast series term cap") {
    CHECK_THROWS_AS(hr_fast_series(BigInt(18556), 100, 3), BudgetExceeded);
    const AnalyticHR a = hr_fast_series(BigInt(18556), 64);
    const AnalyticHR b = hr_fast_series(BigInt(18556), 128);
    CHECK(b.terms_used >= a.terms_used);
    CHECK(b.terms_used <= fast_series_term_cap(BigInt(18556), 128));
    CHECK(rel(a.hr, b.hr) < 1e-17);
  }

  TEST_CASE("reconcile") {
    const RegulatorResult r21 = regulator_from_cf(BigInt(21), kPrec);
    const Reconciliation ok = reconcile(hr_fast_series(BigInt(21), kPrec), r21);
    CHECK(ok.consistent);
    CHECK(ok.multiplier == 3);
    CHECK(ok.numerator == 1);
    const RegulatorResult r79 = regulator_from_cf(BigInt(79), kPrec);
    const Reconciliation h3 = reconcile(hr_fast_series(BigInt(316), kPrec), r79);
    CHECK(h3.consistent);
    CHECK(h3.numerator == 3);
    CHECK(h3.multiplier == 1);
    AnalyticHR fake = hr_fast_series(BigInt(316), kPrec);
    fake.hr = ldexp(fake.hr, -1) + HighPrecReal(0.37, kPrec);
    CHECK_FALSE(reconcile(fake, r79).consistent);
  }
}
