#include <doctest.h>

#include <algorithm>

#include "surd/cf.hpp"
#include "surd/errors.hpp"
#include "surd/oracles.hpp"
#include "surd/two_squares.hpp"

using namespace surd;

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("two_squares") {
  TEST_CASE("examples") {
    const TwoSquares r13 = legendre_two_squares(BigInt(13));
    CHECK(r13.x == 2);
    CHECK(r13.y == 3);
    CHECK(sqrt_minus_one(r13) == 5);
    CHECK(sqrt_minus_one(BigInt(13)) == 5);
    const TwoSquares r5 = legendre_two_squares(BigInt(5));
    CHECK(r5.x == 1);
    CHECK(r5.y == 2);
    CHECK_THROWS_AS(legendre_two_squares(BigInt(21)), EvenPeriod);
    CHECK_THROWS_AS(legendre_two_squares(BigInt(4)), PerfectSquare);
  }

  TEST_CASE("split from two roots of -1") {
    const auto [p, q] = split_from_roots(BigInt(65), BigInt(8), BigInt(18));
    CHECK(p * q == 65);
    CHECK(((p == 5 && q == 13) || (p == 13 && q == 5)));
    CHECK_THROWS_AS(split_from_roots(BigInt(65), BigInt(8), BigInt(57)), TrivialSplit);
    CHECK_THROWS_AS(split_from_roots(BigInt(65), BigInt(8), BigInt(8)), TrivialSplit);
    CHECK_THROWS_AS(split_from_roots(BigInt(65), BigInt(8), BigInt(9)), InvalidInput);
  }

  TEST_CASE("odd periods give two squares and a root of -1") {
    for (unsigned long nn = 2; nn <= 20000; ++nn) {
      const BigInt n(nn);
      if (is_perfect_square(n)) continue;
      const PeriodSummary p = expand_period(n);
      if (p.parity == Parity::even) continue;
      CAPTURE(nn);
      const TwoSquares r = legendre_two_squares(n);
      REQUIRE(r.x * r.x + r.y * r.y == n);
      REQUIRE(r.x > 0);
      REQUIRE(r.x <= r.y);
      try {
        const BigInt s = sqrt_minus_one(r);
        REQUIRE(mod(s * s + 1, n) == 0);
      } catch (const NonInvertible& e) {
        REQUIRE(e.factor() > 1);
        REQUIRE(e.factor() < n);
        REQUIRE(n % e.factor() == 0);
      }
    }
  }

  TEST_CASE("agrees with the Jacobsthal sums for primes p = 1 mod 4") {
    for (std::uint64_t p = 5; p < 30000; p += 4) {
      if (!is_prime(p)) continue;
      CAPTURE(p);
      const TwoSquares r = legendre_two_squares(BigInt(static_cast<unsigned long>(p)));
      const TwoSquares j = oracles::jacobsthal_two_squares(p).output;
      REQUIRE(r.x == j.x);
      REQUIRE(r.y == j.y);
    }
  }

  TEST_CASE("the root found is among all roots of -1") {
    for (std::uint64_t n : {5ULL, 13ULL, 65ULL, 85ULL, 1105ULL, 29ULL * 37ULL}) {
      const BigInt bn(static_cast<unsigned long>(n));
      if (expand_period(bn).parity == Parity::even) continue;
      const auto roots = oracles::all_sqrt_minus_one(n).output;
      const std::uint64_t s = sqrt_minus_one(bn).get_ui();
      CAPTURE(n);
      CHECK(std::find(roots.begin(), roots.end(), s) != roots.end());
    }
  }
}
