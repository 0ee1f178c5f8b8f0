#include "surd/two_squares.hpp"

#include <utility>

#include "surd/cf.hpp"
#include "surd/errors.hpp"

namespace surd {

TwoSquares legendre_two_squares(const BigInt& n, std::optional<std::size_t> max_steps) {
  const CentreInfo centre = walk_to_centre(n, max_steps);
  if (centre.parity == Parity::even) throw EvenPeriod(centre.tau);
  TwoSquares rep{centre.term.c, centre.term.r, n};
  if (rep.x > rep.y) std::swap(rep.x, rep.y);
  if (rep.x * rep.x + rep.y * rep.y != n) {
    throw InternalInvariant("centre of an odd period did not represent N");
  }
  return rep;
}

BigInt sqrt_minus_one(const TwoSquares& rep) {
  const BigInt s = mod(rep.x * inverse_mod(rep.y, rep.n), rep.n);
  if (mod(s * s + 1, rep.n) != 0) throw InternalInvariant("x/y is not a square root of -1");
  return s;
}

BigInt sqrt_minus_one(const BigInt& n) { return sqrt_minus_one(legendre_two_squares(n)); }

std::pair<BigInt, BigInt> split_from_roots(const BigInt& n, const BigInt& s1, const BigInt& s2) {
  if (mod(s1 * s1 + 1, n) != 0 || mod(s2 * s2 + 1, n) != 0) {
    throw InvalidInput("both arguments must be square roots of -1 mod N");
  }
  if (mod(s1 - s2, n) == 0 || mod(s1 + s2, n) == 0) throw TrivialSplit();
  BigInt g = gcd(s1 - s2, n);
  if (g == 1 || g == n) throw InternalInvariant("distinct roots of -1 gave no factor");
  BigInt cofactor = n / g;
  return {std::move(g), std::move(cofactor)};
}

}  // namespace surd
