#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace surd {

using BigInt = mpz_class;

// Floor square root: s*s <= n < (s+1)*(s+1). Throws DomainError for n < 0.
BigInt isqrt(const BigInt& n);

// True iff n >= 0 is a perfect square; the root is written to `root` when set.
bool is_perfect_square(const BigInt& n, BigInt* root = nullptr);

// Nonnegative gcd; gcd(0, 0) == 0.
BigInt gcd(const BigInt& a, const BigInt& b);

// Jacobi symbol (a/n) for odd n >= 1 by quadratic reciprocity. `a` is reduced
// mod n first, so negative and oversized numerators are accepted.
int jacobi(const BigInt& a, const BigInt& n);

// Kronecker extension of the Jacobi symbol to n >= 1 of either parity.
int kronecker(const BigInt& a, const BigInt& n);

// Machine-word variants used in the analytic sums where n is small.
int jacobi(std::int64_t a, std::uint64_t n);
int kronecker(std::int64_t a, std::uint64_t n);

// Modular inverse of a mod m (m > 1); throws NonInvertible carrying gcd(a, m).
BigInt inverse_mod(const BigInt& a, const BigInt& m);

// Least nonnegative residue.
BigInt mod(const BigInt& a, const BigInt& m);

std::size_t bit_length(const BigInt& n);

// Strict decimal parse (optional leading '-'); throws InvalidInput.
BigInt parse_bigint(std::string_view text);

inline std::string to_string(const BigInt& n) { return n.get_str(); }

}  // namespace surd
