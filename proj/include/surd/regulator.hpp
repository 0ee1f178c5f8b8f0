#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "surd/bigint.hpp"
#include "surd/highprec.hpp"

namespace surd {

struct RegulatorResult {
  // ln(A_{tau-1} + B_{tau-1} sqrt N), the sum of tau step distances.
  HighPrecReal r_star;
  // Length of the principal cycle of forms: r_star for even tau, 2 r_star
  // for odd tau (the period of Delta is 2 tau there). This is the log of the
  // smallest unit of norm +1.
  HighPrecReal cycle_length;
  std::size_t tau = 0;
  int unit_norm = 1;   // (-1)^tau
  int index_flag = 1;  // 1 or 3, filled in by reconcile
};

// R* from the expansion of sqrt N, as a product of the complete quotients
// (sqrt N + c_m) / r_m taken in one logarithm; no big convergents are formed.
RegulatorResult regulator_from_cf(const BigInt& n, Precision prec,
                                  std::optional<std::size_t> max_steps = std::nullopt);

struct PellUnit {
  BigInt a;
  BigInt b;
  int norm = 1;
};

// A_{tau-1}, B_{tau-1} as exact integers. Their size is about R* / ln 2 bits,
// so this is meant for modest N.
PellUnit unit_from_cf(const BigInt& n, std::optional<std::size_t> max_steps = std::nullopt);

enum class HRMethod { lattice, fast };

struct AnalyticHR {
  BigInt d;
  HighPrecReal hr;
  Precision prec = 0;
  std::size_t terms_used = 0;
  HRMethod method = HRMethod::lattice;
  // Fast series only: the magnitude bound of the first omitted term.
  std::optional<HighPrecReal> tail_bound;
};

const char* to_string(HRMethod m);

// D = N for N = 1 mod 4, 4N otherwise.
BigInt discriminant_for(const BigInt& n);

// True when D is 4N or N (N = 1 mod 4) for a square-free N > 1.
bool is_valid_discriminant(const BigInt& d);

// -sum_{n <= (D-1)/2} (D/n) ln sin(n pi / D), the Kronecker symbol standing
// in for chi when D is even. O(D) sine evaluations.
AnalyticHR hr_lattice_sum(const BigInt& d, Precision prec);

// Default number of terms for hr_fast_series: the series is summed until
// pi x^2 / D exceeds prec ln 2, which needs about sqrt(D prec ln 2 / pi) terms.
std::size_t fast_series_term_cap(const BigInt& d, Precision prec);

// 1/2 sum_{x >= 1} (D/x) [ sqrt(D)/x erfc(x sqrt(pi/D)) + E1(pi x^2 / D) ].
// Stops when the bound 2D e^{-pi x^2/D} / (pi x^2) on the next term drops
// below 2^-prec times the partial sum. Throws BudgetExceeded when max_terms
// is reached first.
AnalyticHR hr_fast_series(const BigInt& d, Precision prec,
                          std::optional<std::size_t> max_terms = std::nullopt);

struct Reconciliation {
  // hr / r_star ~= numerator / multiplier with numerator a positive integer.
  long numerator = 0;
  int multiplier = 1;
  double ratio = 0.0;
  double distance = 0.0;  // |multiplier * ratio - numerator|
  bool consistent = false;
};

struct ReconcileOptions {
  double tolerance = 1e-4;
  // Also try the multipliers 2 and 6.
  bool extended = false;
};

// Tries hr / r_star scaled by 1 and 3 (then 2 and 6 when extended) and takes
// the first scaling that lands within tolerance of a positive integer.
Reconciliation reconcile(const AnalyticHR& hr, const RegulatorResult& reg,
                         const ReconcileOptions& options = {});

}  // namespace surd
