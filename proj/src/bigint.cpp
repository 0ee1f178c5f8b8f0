#include "surd/bigint.hpp"

#include <cctype>
#include <utility>

#include "surd/errors.hpp"

namespace surd {

BigInt isqrt(const BigInt& n) {
  if (sgn(n) < 0) throw DomainError("isqrt of a negative number");
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

bool is_perfect_square(const BigInt& n, BigInt* root) {
  if (sgn(n) < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  if (root != nullptr) *root = isqrt(n);
  return true;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

int jacobi(const BigInt& a_in, const BigInt& n_in) {
  if (sgn(n_in) <= 0 || mpz_even_p(n_in.get_mpz_t()) != 0) {
    throw InvalidInput("jacobi symbol needs an odd positive modulus");
  }
  BigInt a = mod(a_in, n_in);
  BigInt n = n_in;
  int result = 1;
  while (sgn(a) != 0) {
    // Pull out factors of two: (2/n) = -1 iff n = 3, 5 mod 8.
    const mp_bitcnt_t twos = mpz_scan1(a.get_mpz_t(), 0);
    if (twos != 0) {
      mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), twos);
      const unsigned long n8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
      if ((twos & 1U) != 0 && (n8 == 3 || n8 == 5)) result = -result;
    }
    // Reciprocity: flip when both are 3 mod 4.
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) result = -result;
    std::swap(a, n);
    a = mod(a, n);
  }
  return n == 1 ? result : 0;
}

int kronecker(const BigInt& a, const BigInt& n) {
  if (sgn(n) <= 0) throw InvalidInput("kronecker symbol needs a positive lower argument");
  const mp_bitcnt_t twos = mpz_scan1(n.get_mpz_t(), 0);
  BigInt odd = n;
  mpz_tdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), twos);
  int result = 1;
  if (twos != 0) {
    if (mpz_even_p(a.get_mpz_t()) != 0) return 0;
    const unsigned long a8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
    if ((twos & 1U) != 0 && (a8 == 3 || a8 == 5)) result = -1;
  }
  return result * jacobi(a, odd);
}

int jacobi(std::int64_t a_in, std::uint64_t n) {
  if (n == 0 || (n & 1U) == 0) throw InvalidInput("jacobi symbol needs an odd positive modulus");
  std::int64_t r = a_in % static_cast<std::int64_t>(n);
  std::uint64_t a = r < 0 ? static_cast<std::uint64_t>(r + static_cast<std::int64_t>(n))
                          : static_cast<std::uint64_t>(r);
  int result = 1;
  while (a != 0) {
    while ((a & 1U) == 0) {
      a >>= 1U;
      const std::uint64_t n8 = n & 7U;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    if ((a & 3U) == 3 && (n & 3U) == 3) result = -result;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? result : 0;
}

int kronecker(std::int64_t a, std::uint64_t n) {
  if (n == 0) throw InvalidInput("kronecker symbol needs a positive lower argument");
  int result = 1;
  while ((n & 1U) == 0) {
    if ((a & 1) == 0) return 0;
    const std::int64_t a8 = ((a % 8) + 8) % 8;
    if (a8 == 3 || a8 == 5) result = -result;
    n >>= 1U;
  }
  return result * jacobi(a, n);
}

BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  BigInt inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw NonInvertible(gcd(a, m));
  }
  return inv;
}

std::size_t bit_length(const BigInt& n) {
  if (sgn(n) == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

BigInt parse_bigint(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw InvalidInput("expected a decimal integer, got '" + std::string(text) + "'");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (std::isdigit(static_cast<unsigned char>(text[k])) == 0) {
      throw InvalidInput("expected a decimal integer, got '" + std::string(text) + "'");
    }
  }
  BigInt value(std::string(text.substr(text[0] == '+' ? 1 : 0)), 10);
  return value;
}

}  // namespace surd
