#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surd/bigint.hpp"
#include "surd/qform.hpp"
#include "surd/regulator.hpp"
#include "surd/two_squares.hpp"

// Slow reference implementations. Only the tests link these.
namespace surd::oracles {

template <class T>
struct OracleReport {
  BigInt input;
  T output;
  std::string method;
  std::size_t cost = 0;  // loop iterations
};

// Prime factors with multiplicity, ascending. Throws BudgetExceeded above 2^64.
OracleReport<std::vector<BigInt>> trial_division(const BigInt& n);

// Smallest B in [1, max_B] with N B^2 +- 1 a square. Throws BudgetExceeded.
OracleReport<PellUnit> pell_bruteforce(const BigInt& n, std::uint64_t max_b);

// Fundamental solution of A^2 - N B^2 = +-1 by the cyclic (chakravala)
// method, for N whose unit is out of reach of the brute-force scan.
OracleReport<PellUnit> pell_chakravala(const BigInt& n);

// x = S(q_R)/2, y = S(q_N)/2 with S(a) = sum_n ((n (n^2 - a)) / p). O(p).
OracleReport<TwoSquares> jacobsthal_two_squares(std::uint64_t p);

// Every s in [0, N) with s^2 = -1 mod N.
OracleReport<std::vector<std::uint64_t>> all_sqrt_minus_one(std::uint64_t n);

// One period of Delta_m = A_m^2 - N B_m^2 from exact convergents, with the
// first square and the first collision that give a proper gcd with N.
struct DeltaScan {
  std::size_t tau = 0;
  std::vector<BigInt> deltas;  // Delta_0 .. Delta_{period-1}
  std::optional<std::size_t> usable_square;
  std::optional<std::pair<std::size_t, std::size_t>> usable_collision;
};
OracleReport<DeltaScan> delta_scan(const BigInt& n);

// Product of two ideals [a, b + sqrt N] through the Hermite normal form of
// the four generator products; an independent check of qform::multiply.
OracleReport<IdealProduct> hnf_ideal_product(const IdealRep& lhs, const IdealRep& rhs, const BigInt& n);

// Forms [Delta_m, 2 Omega_m, Delta_{m-1}] for m = 0 .. period-1 computed
// straight from exact convergents A_m, B_m.
OracleReport<std::vector<QForm>> principal_cycle(const BigInt& n);

}  // namespace surd::oracles
