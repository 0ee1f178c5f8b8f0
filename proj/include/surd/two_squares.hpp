#pragma once

#include <optional>
#include <utility>

#include "surd/bigint.hpp"

namespace surd {

// N = x^2 + y^2 with 0 < x <= y.
struct TwoSquares {
  BigInt x;
  BigInt y;
  BigInt n;
};

// Legendre's construction: for odd period tau the complete quotient at
// ell = (tau - 1) / 2 has N = c_ell^2 + r_ell^2. Throws EvenPeriod otherwise.
TwoSquares legendre_two_squares(const BigInt& n, std::optional<std::size_t> max_steps = std::nullopt);

// s = x * y^-1 mod N, a square root of -1. Throws NonInvertible when
// gcd(y, N) > 1 (the gcd is a factor of N).
BigInt sqrt_minus_one(const TwoSquares& rep);
BigInt sqrt_minus_one(const BigInt& n);

// Splits N from two square roots of -1 that differ other than by sign.
// Throws TrivialSplit when s2 = +-s1 mod N and InvalidInput when either
// argument is not a root of -1.
std::pair<BigInt, BigInt> split_from_roots(const BigInt& n, const BigInt& s1, const BigInt& s2);

}  // namespace surd
