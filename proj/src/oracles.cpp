#include "surd/oracles.hpp"

#include <map>

#include "surd/errors.hpp"

namespace surd::oracles {

namespace {

struct Convergents {
  std::size_t tau = 0;
  std::vector<BigInt> a;  // A_{-1}, A_0, A_1, ...
  std::vector<BigInt> b;
};

// Exact convergents over `periods` periods of the expansion; the quotients
// come from floor((P + a0) / Q) on (P + sqrt N) / Q.
Convergents convergents(const BigInt& n, std::size_t periods) {
  const BigInt a0 = isqrt(n);
  if (a0 * a0 == n) throw PerfectSquare(a0);
  Convergents out;
  out.a = {1, a0};
  out.b = {0, 1};
  BigInt p = a0;
  BigInt q = n - a0 * a0;
  std::vector<BigInt> quotients;
  while (true) {
    const BigInt a = (p + a0) / q;
    quotients.push_back(a);
    p = a * q - p;
    q = (n - p * p) / q;
    if (a == 2 * a0) break;
  }
  out.tau = quotients.size();
  for (std::size_t k = 0; k < periods; ++k) {
    for (const BigInt& a : quotients) {
      out.a.push_back(a * out.a.back() + out.a[out.a.size() - 2]);
      out.b.push_back(a * out.b.back() + out.b[out.b.size() - 2]);
    }
  }
  return out;
}

}  // namespace

OracleReport<std::vector<BigInt>> trial_division(const BigInt& n) {
  if (n < 2) throw InvalidInput("trial division needs N >= 2");
  if (bit_length(n) > 64) throw BudgetExceeded(64, "trial division is limited to 64-bit N");
  OracleReport<std::vector<BigInt>> r{n, {}, "trial_division", 0};
  BigInt m = n;
  for (BigInt d = 2; d * d <= m; ++d) {
    ++r.cost;
    while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t()) != 0) {
      r.output.push_back(d);
      m /= d;
    }
  }
  if (m > 1) r.output.push_back(m);
  return r;
}

OracleReport<PellUnit> pell_bruteforce(const BigInt& n, std::uint64_t max_b) {
  OracleReport<PellUnit> r{n, {}, "pell_bruteforce", 0};
  for (std::uint64_t b = 1; b <= max_b; ++b) {
    ++r.cost;
    const BigInt nb2 = n * BigInt(static_cast<unsigned long>(b)) * BigInt(static_cast<unsigned long>(b));
    for (const int norm : {-1, 1}) {
      const BigInt s = nb2 + norm;
      if (mpz_perfect_square_p(s.get_mpz_t()) != 0) {
        r.output = PellUnit{isqrt(s), BigInt(static_cast<unsigned long>(b)), norm};
        return r;
      }
    }
  }
  throw BudgetExceeded(static_cast<std::size_t>(max_b), "no unit with B <= max_B");
}

OracleReport<PellUnit> pell_chakravala(const BigInt& n) {
  const BigInt root = isqrt(n);
  if (root * root == n) throw PerfectSquare(root);
  OracleReport<PellUnit> r{n, {}, "chakravala", 0};
  // Start from the square nearest N.
  BigInt a = (n - root * root <= (root + 1) * (root + 1) - n) ? root : BigInt(root + 1);
  BigInt b = 1;
  BigInt k = a * a - n;
  while (k != 1 && k != -1) {
    ++r.cost;
    const BigInt ak = abs(k);
    // m = -a / b mod |k|, then shifted next to sqrt N.
    const BigInt base = mod(-a * inverse_mod(b, ak), ak);
    BigInt lo = base + ((root - base) / ak) * ak;
    if (lo > root) lo -= ak;
    BigInt best = lo;
    for (BigInt m = lo; m <= lo + 2 * ak; m += ak) {
      if (m <= 0) continue;
      if (best <= 0 || abs(m * m - n) < abs(best * best - n)) best = m;
    }
    const BigInt na = (a * best + n * b) / ak;
    const BigInt nb = (a + b * best) / ak;
    k = (best * best - n) / k;
    a = abs(na);
    b = abs(nb);
  }
  r.output = PellUnit{a, b, k == 1 ? 1 : -1};
  return r;
}

OracleReport<TwoSquares> jacobsthal_two_squares(std::uint64_t p) {
  if (p < 5 || p % 4 != 1 || mpz_probab_prime_p(BigInt(static_cast<unsigned long>(p)).get_mpz_t(), 30) == 0) {
    throw InvalidInput("Jacobsthal sums need a prime p = 1 mod 4");
  }
  OracleReport<TwoSquares> r{BigInt(static_cast<unsigned long>(p)), {}, "jacobsthal", 0};
  std::uint64_t non_residue = 2;
  while (jacobi(static_cast<std::int64_t>(non_residue), p) != -1) ++non_residue;
  auto sum = [&](std::uint64_t a) {
    long s = 0;
    for (std::uint64_t x = 1; x < p; ++x) {
      ++r.cost;
      const unsigned __int128 sq = static_cast<unsigned __int128>(x) * x % p;
      const std::uint64_t inner = static_cast<std::uint64_t>((sq + p - a % p) % p);
      const std::uint64_t v = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * inner % p);
      s += jacobi(static_cast<std::int64_t>(v), p);
    }
    return s < 0 ? -s : s;
  };
  BigInt x = sum(1) / 2;
  BigInt y = sum(non_residue) / 2;
  if (x > y) std::swap(x, y);
  r.output = TwoSquares{x, y, r.input};
  return r;
}

OracleReport<std::vector<std::uint64_t>> all_sqrt_minus_one(std::uint64_t n) {
  OracleReport<std::vector<std::uint64_t>> r{BigInt(static_cast<unsigned long>(n)), {}, "exhaustive", 0};
  for (std::uint64_t s = 0; s < n; ++s) {
    ++r.cost;
    if ((static_cast<unsigned __int128>(s) * s + 1) % n == 0) r.output.push_back(s);
  }
  return r;
}

OracleReport<DeltaScan> delta_scan(const BigInt& n) {
  const Convergents c = convergents(n, 2);
  OracleReport<DeltaScan> r{n, {}, "delta_scan", 0};
  r.output.tau = c.tau;
  const std::size_t period = c.tau % 2 == 0 ? c.tau : 2 * c.tau;
  // c.a[m + 1] is A_m.
  for (std::size_t m = 0; m < period; ++m) {
    r.output.deltas.push_back(c.a[m + 1] * c.a[m + 1] - n * c.b[m + 1] * c.b[m + 1]);
  }
  auto proper = [&](const BigInt& v) {
    const BigInt g = gcd(v, n);
    return g > 1 && g < n;
  };
  for (std::size_t m = 1; m < period && !r.output.usable_square; ++m) {
    ++r.cost;
    const BigInt& d = r.output.deltas[m];
    BigInt d0;
    if (d <= 1 || !is_perfect_square(d, &d0)) continue;
    if (proper(c.a[m + 1] - d0) || proper(c.a[m + 1] + d0)) r.output.usable_square = m;
  }
  const std::size_t half = (c.tau - 1) / 2;  // indices < tau / 2
  for (std::size_t k = 1; k <= half && !r.output.usable_collision; ++k) {
    for (std::size_t m = 0; m < k; ++m) {
      ++r.cost;
      if (r.output.deltas[m] != r.output.deltas[k]) continue;
      if (proper(c.a[k + 1] - c.a[m + 1]) || proper(c.a[k + 1] + c.a[m + 1])) {
        r.output.usable_collision = std::make_pair(m, k);
        break;
      }
    }
  }
  return r;
}

OracleReport<IdealProduct> hnf_ideal_product(const IdealRep& lhs, const IdealRep& rhs, const BigInt& n) {
  // Generators x + y sqrt N of the product module.
  std::vector<std::pair<BigInt, BigInt>> gens{
      {lhs.norm * rhs.norm, 0},
      {lhs.norm * rhs.b, lhs.norm},
      {rhs.norm * lhs.b, rhs.norm},
      {lhs.b * rhs.b + n, lhs.b + rhs.b},
  };
  OracleReport<IdealProduct> r{n, {}, "hnf", 0};
  // Euclid on the sqrt N coordinate until one generator carries it.
  while (true) {
    ++r.cost;
    std::size_t pivot = gens.size();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (sgn(gens[i].second) == 0) continue;
      if (pivot == gens.size() || abs(gens[i].second) < abs(gens[pivot].second)) pivot = i;
    }
    bool reduced = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i == pivot || sgn(gens[i].second) == 0) continue;
      const BigInt q = gens[i].second / gens[pivot].second;
      gens[i].first -= q * gens[pivot].first;
      gens[i].second -= q * gens[pivot].second;
      if (sgn(gens[i].second) != 0) reduced = false;
    }
    if (reduced) {
      BigInt x = gens[pivot].first;
      BigInt g = gens[pivot].second;
      if (g < 0) {
        x = -x;
        g = -g;
      }
      BigInt lattice = 0;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i != pivot) lattice = gcd(lattice, gens[i].first);
      }
      r.output.content = g;
      r.output.ideal.norm = lattice / g;
      r.output.ideal.b = mod(x / g, r.output.ideal.norm);
      r.output.ideal.sign = lhs.sign * rhs.sign;
      return r;
    }
  }
}

OracleReport<std::vector<QForm>> principal_cycle(const BigInt& n) {
  const Convergents c = convergents(n, 2);
  OracleReport<std::vector<QForm>> r{n, {}, "convergents", 0};
  const std::size_t period = c.tau % 2 == 0 ? c.tau : 2 * c.tau;
  for (std::size_t m = 0; m < period; ++m) {
    ++r.cost;
    const BigInt& a = c.a[m + 1];
    const BigInt& b = c.b[m + 1];
    const BigInt& ap = c.a[m];
    const BigInt& bp = c.b[m];
    r.output.push_back(QForm{a * a - n * b * b, 2 * (a * ap - n * b * bp), ap * ap - n * bp * bp, n});
  }
  return r;
}

}  // namespace surd::oracles
