#include <doctest.h>

#include <random>

#include "../common/period_table.hpp"
#include "surd/cf.hpp"
#include "surd/errors.hpp"

using namespace surd;
using surd::testing::two_periods;

namespace {

std::vector<long> as_longs(const std::vector<BigInt>& v) {
  std::vector<long> out;
  for (const BigInt& x : v) out.push_back(x.get_si());
  return out;
}

bool is_square(unsigned long n) {
  const unsigned long s = isqrt(BigInt(n)).get_ui();
  return s * s == n;
}

}  // namespace

TEST_SUITE("cf_engine") {
  TEST_CASE("init_surd examples") {
    const SurdState s13 = init_surd(BigInt(13));
    CHECK(s13.a0 == 3);
    CHECK(s13.c == 3);
    CHECK(s13.r == 4);
    CHECK(s13.m == 0);
    const SurdState s21 = init_surd(BigInt(21));
    CHECK(s21.a0 == 4);
    CHECK(s21.c == 4);
    CHECK(s21.r == 5);
    try {
      init_surd(BigInt(9));
      FAIL("expected PerfectSquare");
    } catch (const PerfectSquare& e) {
      CHECK(e.root() == 3);
    }
    CHECK_THROWS_AS(init_surd(BigInt(1)), InvalidInput);
  }

  TEST_CASE("surd_step examples") {
    const SurdState s = surd_step(init_surd(BigInt(13)));
    CHECK(s.a == 1);
    CHECK(s.c == 1);
    CHECK(s.r == 3);
    const SurdState t = surd_step(surd_step(init_surd(BigInt(21))));
    CHECK(t.m == 2);
    CHECK(t.a == 1);
    CHECK(t.c == 3);
    CHECK(t.r == 3);
    for (long m = 1; m <= 60; ++m) {
      const SurdState u = surd_step(init_surd(BigInt(m * m + 1)));
      CHECK(u.a == 2 * m);
      CHECK(u.c == m);
      CHECK(u.r == 1);
      CHECK(expand_period(BigInt(m * m + 1)).tau == 1);
    }
  }

  TEST_CASE("surd_step rejects a corrupted state") {
    SurdState s = init_surd(BigInt(21));
    s.r = 7;
    CHECK_THROWS_AS(surd_step(s), InternalInvariant);
  }

  TEST_CASE("expand_period examples") {
    const PeriodSummary p13 = expand_period(BigInt(13));
    CHECK(p13.tau == 5);
    CHECK(as_longs(p13.quotients) == std::vector<long>{1, 1, 1, 1, 6});
    CHECK(p13.parity == Parity::odd);
    CHECK(p13.ell == 2);
    const PeriodSummary p21 = expand_period(BigInt(21));
    CHECK(p21.tau == 6);
    CHECK(as_longs(p21.quotients) == std::vector<long>{1, 1, 2, 1, 1, 8});
    CHECK(p21.ell == 2);
    CHECK(as_longs(expand_period(BigInt(7)).quotients) == std::vector<long>{1, 1, 1, 4});
  }

  TEST_CASE("expand_period budget and capped storage") {
    CHECK_THROWS_AS(expand_period(BigInt(4633), 5), BudgetExceeded);
    const PeriodSummary full = expand_period(BigInt(4633));
    const PeriodSummary capped = expand_period(BigInt(4633), std::nullopt, 4);
    CHECK(capped.quotients_truncated);
    CHECK(capped.quotients.size() == 4);
    CHECK(capped.tau == full.tau);
    CHECK(capped.quotients_digest == full.quotients_digest);
    CHECK_FALSE(full.quotients_truncated);
  }

  TEST_CASE("convergents of sqrt 21") {
    ConvergentState c = convergent_init(BigInt(4));
    std::vector<long> a{c.a.get_si()};
    std::vector<long> b{c.b.get_si()};
    for (long q : {1, 1, 2, 1, 1}) {
      c = convergent_step(c, BigInt(q));
      a.push_back(c.a.get_si());
      b.push_back(c.b.get_si());
    }
    CHECK(a == std::vector<long>{4, 5, 9, 23, 32, 55});
    CHECK(b == std::vector<long>{1, 1, 2, 5, 7, 12});
    const ConvergentState one = convergent_step(convergent_init(BigInt(4)), BigInt(1));
    CHECK(one.a * one.b_prev - one.a_prev * one.b == 1);
    CHECK_THROWS_AS(convergent_step(c, BigInt(0)), InvalidInput);
  }

  TEST_CASE("convergents mod N stay reduced") {
    ConvergentState c = convergent_init(BigInt(4), BigInt(21));
    for (long q : {1, 1, 2, 1, 1}) c = convergent_step(c, BigInt(q));
    CHECK(c.a == 55 % 21);
    CHECK(c.b == 12);
  }

  TEST_CASE("Delta and Omega of sqrt 21") {
    DeltaOmegaState d = delta_omega_init(BigInt(21), BigInt(4));
    std::vector<long> deltas{d.delta.get_si()};
    std::vector<long> omegas;
    for (long q : {1, 1, 2, 1, 1}) {
      d = delta_omega_step(d, BigInt(q));
      deltas.push_back(d.delta.get_si());
      omegas.push_back(d.omega.get_si());
      CHECK(d.omega * d.omega - d.delta * d.delta_prev == 21);
    }
    CHECK(deltas == std::vector<long>{-5, 4, -3, 4, -5, 1});
    CHECK(omegas == std::vector<long>{-1, 3, -3, 1, -4});
    // The closed form at m = 1 agrees with one recurrence step from m = 0.
    const DeltaOmegaState one = delta_omega_at_one(BigInt(21), BigInt(4), BigInt(1));
    const DeltaOmegaState stepped = delta_omega_step(delta_omega_init(BigInt(21), BigInt(4)), BigInt(1));
    CHECK(one.delta == stepped.delta);
    CHECK(one.omega == stepped.omega);
    CHECK(one.delta_prev == stepped.delta_prev);
  }

  TEST_CASE("Delta and Omega of sqrt 13") {
    const auto t = two_periods(BigInt(13));
    std::vector<long> deltas;
    std::vector<long> omegas;
    for (std::size_t m = 0; m < 5; ++m) {
      deltas.push_back(t.terms[m].delta.get_si());
      omegas.push_back(t.terms[m].omega.get_si());
    }
    CHECK(deltas == std::vector<long>{-4, 3, -3, 4, -1});
    CHECK(std::vector<long>(omegas.begin() + 1, omegas.end()) == std::vector<long>{-1, 2, -1, 3});
    CHECK(t.terms[5].omega == -3);
    CHECK(t.terms[5].conv_a == 119);
    CHECK(t.terms[5].conv_b == 33);
  }

  TEST_CASE("verify_symmetry") {
    for (long n : {21L, 13L, 7L, 4633L, 94L}) {
      const auto t = two_periods(BigInt(n));
      std::vector<BigInt> deltas;
      std::vector<BigInt> omegas;
      for (std::size_t m = 0; m <= t.summary.tau; ++m) {
        deltas.push_back(t.terms[m].delta);
        omegas.push_back(t.terms[m].omega);
      }
      CAPTURE(n);
      CHECK(verify_symmetry(t.summary, deltas, omegas));
      if (t.summary.tau >= 3) {
        deltas[0] += 2;
        CHECK_FALSE(verify_symmetry(t.summary, deltas, omegas));
      }
    }
    // Centre of the odd period of 13: Delta_2 = -Delta_1.
    const auto t13 = two_periods(BigInt(13));
    CHECK(t13.terms[2].delta == -t13.terms[1].delta);
  }

  TEST_CASE("structural invariants for N <= 3000") {
    for (unsigned long nn = 2; nn <= 3000; ++nn) {
      if (is_square(nn)) continue;
      const BigInt n(nn);
      const auto t = two_periods(n);
      const std::size_t tau = t.summary.tau;
      const BigInt& a0 = t.summary.a0;
      CAPTURE(nn);
      for (std::size_t m = 0; m <= 2 * tau; ++m) {
        const auto& x = t.terms[m];
        REQUIRE(x.omega * x.omega - x.delta * x.delta_prev == n);
        // c_m = |Omega_m| and r_m = |Delta_m| at the same index.
        REQUIRE(abs(x.omega) == x.c);
        REQUIRE(abs(x.delta) == x.r);
        // Delta_m = (-1)^(m+1) r_m.
        REQUIRE(sgn(x.delta) == (m % 2 == 0 ? -1 : 1));
        REQUIRE(sgn(x.omega) == (m % 2 == 0 ? 1 : -1));
        REQUIRE(x.c <= a0);
        REQUIRE(x.r <= 2 * a0);
        REQUIRE(x.a <= 2 * a0);
        if (m >= 1) REQUIRE(a0 - x.c < x.r);
        REQUIRE(x.conv_a * x.conv_a - n * x.conv_b * x.conv_b == x.delta);
      }
      REQUIRE(t.summary.quotients.back() == 2 * a0);
      for (std::size_t j = 1; j < tau; ++j) REQUIRE(t.summary.quotients[j - 1] == t.summary.quotients[tau - j - 1]);
      // a_m = 2 a0 agrees with the repetition of the complete quotient.
      REQUIRE(t.terms[tau + 1].c == t.terms[1].c);
      REQUIRE(t.terms[tau + 1].r == t.terms[1].r);
      REQUIRE(t.terms[tau - 1].omega == (tau % 2 == 0 ? -a0 : a0));
      if (tau % 2 == 0 && tau >= 2) {
        const std::size_t ell = (tau - 2) / 2;
        REQUIRE(t.terms[ell + 1].omega == -t.terms[ell].omega);
        if (ell >= 1) REQUIRE(t.terms[ell + 1].delta == t.terms[ell - 1].delta);
      }
      if (nn > 7) {
        REQUIRE(static_cast<double>(tau) <= 0.72 * std::sqrt(static_cast<double>(nn)) * std::log(static_cast<double>(nn)));
      }
      // Eq. 4 on the exact convergents.
      const BigInt& at = t.terms[tau - 1].conv_a;
      const BigInt& bt = t.terms[tau - 1].conv_b;
      for (std::size_t m = 0; m + 2 < tau; ++m) {
        BigInt rhs = at * t.terms[m].conv_a - n * bt * t.terms[m].conv_b;
        if (m % 2 == 0) rhs = -rhs;
        REQUIRE(t.terms[tau - m - 2].conv_a == rhs);
      }
    }
  }

  TEST_CASE("the centre walk finds the period for N <= 10^4") {
    for (unsigned long nn = 2; nn <= 10000; ++nn) {
      if (is_square(nn)) continue;
      const PeriodSummary p = expand_period(BigInt(nn));
      const CentreInfo c = walk_to_centre(BigInt(nn));
      CAPTURE(nn);
      REQUIRE(c.tau == p.tau);
      REQUIRE(c.ell == p.ell);
    }
  }

  TEST_CASE("default step budget") {
    CHECK(default_max_steps(BigInt(21)) >= 6);
    CHECK_THROWS_AS(walk_to_centre(BigInt(4633), 3), BudgetExceeded);
  }
}
