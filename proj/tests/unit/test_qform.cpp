#include <doctest.h>

#include <random>

#include "surd/cf.hpp"
#include "surd/errors.hpp"
#include "surd/oracles.hpp"
#include "surd/qform.hpp"

using namespace surd;

namespace {

constexpr Precision kPrec = 128;

QForm q(long a, long b2, long c, long n) { return QForm{BigInt(a), BigInt(b2), BigInt(c), BigInt(n)}; }

bool near(const HighPrecReal& x, double want, double tol) { return std::abs(x.to_double() - want) <= tol; }

}  // namespace

TEST_SUITE("qform") {
  TEST_CASE("forms on the cycle of 21") {
    CHECK(form_at(BigInt(21), BigInt(4), BigInt(-1), BigInt(-5)) == q(4, -2, -5, 21));
    CHECK(form_at(BigInt(21), BigInt(-3), BigInt(3), BigInt(4)) == q(-3, 6, 4, 21));
    CHECK_THROWS_AS(form_at(BigInt(21), BigInt(1), BigInt(1), BigInt(1)), DiscriminantMismatch);
    CHECK(cycle_form(BigInt(21), 1, kPrec).form == q(4, -2, -5, 21));
    CHECK(cycle_form(BigInt(21), 2, kPrec).form == q(-3, 6, 4, 21));
    CHECK(principal_form(BigInt(21), kPrec).form == q(-5, 8, 1, 21));
  }

  TEST_CASE("signature readings") {
    CHECK(signature(q(4, -2, -5, 21)) == Signature::plus_minus_minus);
    CHECK(signature(q(-3, 6, 4, 21)) == Signature::minus_plus_plus);
    CHECK(signature(q(1, 1, 1, 21)) == Signature::other);
    CHECK(std::string(to_string(Signature::minus_plus_plus)) == "(-,+,+)");
    // Along the cycle the raw reading alternates; the other one does not.
    const auto cycle = oracles::principal_cycle(BigInt(4633)).output;
    for (std::size_t m = 0; m < cycle.size(); ++m) {
      const Signature want = m % 2 == 0 ? Signature::minus_plus_plus : Signature::plus_minus_minus;
      CHECK(signature(cycle[m]) == want);
      const Signature other = signature(cycle[m], SignatureReading::alternating, m);
      CHECK((other == want) == (m % 2 == 0));
    }
  }

  TEST_CASE("step distances") {
    CHECK(near(distance_increment(BigInt(-1), 1, BigInt(21), kPrec), 0.5 * std::log((std::sqrt(21.0) + 1) / (std::sqrt(21.0) - 1)), 1e-12));
    CHECK(near(cycle_form(BigInt(21), 1, kPrec).dist, 1.3450, 1e-4));
    CHECK(near(cycle_form(BigInt(21), 6, kPrec).dist, 4.700397711, 1e-8));
    CHECK(near(cycle_form(BigInt(21), 3, kPrec).dist, 2.350198855, 1e-8));
    CHECK(near(step_distance(BigInt(3), BigInt(21), kPrec), 0.5 * std::log((3 + std::sqrt(21.0)) / (std::sqrt(21.0) - 3)), 1e-12));
    CHECK(near(step_distance(BigInt(-3), BigInt(21), kPrec), -0.5 * std::log((3 + std::sqrt(21.0)) / (std::sqrt(21.0) - 3)), 1e-12));
    CHECK_THROWS_AS(distance_increment(BigInt(5), 0, BigInt(21), kPrec), DomainError);
  }

  TEST_CASE("rho steps invert each other and close the cycle") {
    for (unsigned long nn : {21UL, 13UL, 94UL, 4633UL, 1000003UL}) {
      const BigInt n(nn);
      const std::size_t tau = expand_period(n).tau;
      FormWithDistance f = principal_form(n, kPrec);
      const QForm start = f.form;
      std::size_t steps = 0;
      do {
        const RhoStep fw = rho_plus(f.form, kPrec);
        const RhoStep bw = rho_minus(fw.form, kPrec);
        REQUIRE(bw.form == f.form);
        REQUIRE(std::abs((fw.increment - bw.increment).to_double()) < 1e-25);
        REQUIRE(is_reduced(fw.form));
        f = step_forward(f);
        ++steps;
      } while (f.form != start && steps <= 10000);
      CAPTURE(nn);
      CHECK((steps == tau || steps == 2 * tau));
    }
  }

  TEST_CASE("forms from rho agree with the convergent oracle") {
    for (unsigned long nn = 2; nn <= 1500; ++nn) {
      const BigInt n(nn);
      if (is_perfect_square(n)) continue;
      const auto cycle = oracles::principal_cycle(n).output;
      FormWithDistance f = principal_form(n, 64);
      CAPTURE(nn);
      for (std::size_t m = 0; m < cycle.size(); ++m) {
        REQUIRE(f.form == cycle[m]);
        f = step_forward(f);
      }
    }
  }

  TEST_CASE("ideal correspondence") {
    const QForm f = q(-3, 6, 4, 21);
    const IdealRep i = to_ideal(f);
    CHECK(i.norm == 4);
    CHECK(i.b == 3);
    CHECK(i.sign == 1);
    CHECK(from_ideal(i, BigInt(21)) == f);
    const QForm g = q(4, -2, -5, 21);
    CHECK(from_ideal(to_ideal(g), BigInt(21)) == g);
  }

  TEST_CASE("multiply agrees with the HNF oracle") {
    std::mt19937_64 rng(7);
    for (unsigned long nn : {21UL, 94UL, 4633UL, 999983UL}) {
      const BigInt n(nn);
      const auto cycle = oracles::principal_cycle(n).output;
      for (int trial = 0; trial < 40; ++trial) {
        const QForm& f = cycle[rng() % cycle.size()];
        const QForm& g = cycle[rng() % cycle.size()];
        const IdealRep a = to_ideal(f);
        const IdealRep b = to_ideal(g);
        const IdealProduct got = multiply(a, b, n);
        const IdealProduct want = oracles::hnf_ideal_product(a, b, n).output;
        CAPTURE(nn);
        REQUIRE(got.content == want.content);
        REQUIRE(got.ideal.norm == want.ideal.norm);
        REQUIRE(mod(got.ideal.b - want.ideal.b, got.ideal.norm) == 0);
      }
    }
  }

  TEST_CASE("composition tracks distance") {
    const BigInt n(21);
    const FormWithDistance f2 = cycle_form(n, 2, kPrec);
    const FormWithDistance f4 = doubling(f2);
    CHECK(f4.form == cycle_form(n, 4, kPrec).form);
    CHECK(near(f4.dist, 3.1336, 1e-3));
    const FormWithDistance f8 = doubling(f2, 2);
    CHECK(near(f8.dist, 6.2672, 1e-3));
    // Composing with f_0 changes nothing.
    const FormWithDistance id = compose(principal_form(n, kPrec), f2);
    CHECK(id.form == f2.form);
    CHECK(near(id.dist - f2.dist, 0.0, 1e-20));
  }

  TEST_CASE("composed distances agree with walked distances") {
    for (unsigned long nn : {4633UL, 1000003UL, 999962000357UL}) {
      const BigInt n(nn);
      FormWithDistance f = cycle_form(n, 3, kPrec);
      for (int k = 0; k < 8; ++k) {
        std::size_t steps = 0;
        const FormWithDistance g = compose(f, f, {}, &steps);
        CHECK(steps < 64 + 4 * bit_length(n));
        // Walk from f_0 to the composed form and compare.
        FormWithDistance w = principal_form(n, kPrec);
        std::size_t guard = 0;
        while (w.form != g.form && guard++ < 2000000) w = step_forward(w);
        REQUIRE(w.form == g.form);
        CAPTURE(nn);
        CAPTURE(k);
        const double diff = (g.dist - w.dist).to_double();
        CHECK(std::abs(diff) <= g.err.to_double() + 1e-20);
        f = g;
        if (f.dist.to_double() > 40) break;
      }
    }
  }

  TEST_CASE("reduce rejects definite forms") {
    CHECK_THROWS_AS(reduce(q(1, 0, 1, -1), kPrec), NotIndefinite);
    const Reduction r = reduce(q(1, 0, -21, 21), kPrec);
    CHECK(is_reduced(r.form));
  }
}
