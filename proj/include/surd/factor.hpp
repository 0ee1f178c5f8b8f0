#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <vector>

#include "surd/bigint.hpp"
#include "surd/highprec.hpp"
#include "surd/qform.hpp"

namespace surd {

enum class Method { direct, infrastructure, two_squares, shanks, fermat, trivial };
const char* to_string(Method m);

struct StepCounters {
  std::size_t cf_steps = 0;
  std::size_t compositions = 0;
  std::size_t rho_steps = 0;
  std::size_t reduction_steps = 0;
};

// A proper split N = factors[0] * factors[1].
struct FactorResult {
  BigInt n;
  std::vector<BigInt> factors;
  Method method = Method::direct;
  std::map<std::string, std::string> witness;
  StepCounters steps;
};

// Builds a result for the split (g, N/g); throws InternalInvariant unless
// 1 < g < N and g | N.
FactorResult make_split(const BigInt& n, const BigInt& g, Method method,
                        std::map<std::string, std::string> witness = {}, StepCounters steps = {});

// Candidate factor from a form coefficient: gcd(v, N) with powers of two
// removed from v first when N is odd. Empty unless proper.
std::optional<BigInt> proper_gcd(const BigInt& v, const BigInt& n);

// Walks to the palindrome centre; for even tau the value |Delta_(tau-2)/2|
// shares a factor with 4N. Throws OddPeriod, NoSplit, BudgetExceeded.
FactorResult factor_direct(const BigInt& n, std::optional<std::size_t> max_steps = std::nullopt,
                           std::stop_token stop = {});

struct InfrastructureOptions {
  // rho steps in each direction; 0 selects 64 + 8 bitlen(N).
  std::size_t sweep_width = 0;
  // The sweep is widened by this factor once before giving up.
  std::size_t widen_factor = 4;
  ComposeOptions compose;
};

struct GiantStepTable {
  // entries[j] = 2^j . f_ell at distance about 2^j d_ell.
  std::vector<FormWithDistance> entries;
  std::size_t j_t = 0;
  std::size_t ell = 0;
  HighPrecReal d_ell{64};
};

// Steps 1-3: f_ell with ell the smallest index >= 2 with d_ell > ln 2,
// j_t = ceil(log2(R* / d_ell)), then j_t doublings.
GiantStepTable build_giant_step_table(const BigInt& n, const HighPrecReal& r_star, Precision prec,
                                      const InfrastructureOptions& options, StepCounters& counters);

// Steps 4-5: binary descent towards R*/2 with the table, then an outward
// rho+/rho- sweep testing gcd(|a|, N) and gcd(|c|, N). Throws NoSplit.
FactorResult factor_infrastructure(const BigInt& n, const HighPrecReal& r_star, Precision prec,
                                   const InfrastructureOptions& options = {}, std::stop_token stop = {});

// Looks for Delta_m = d0^2 over one period of Delta (skipping Delta = 1) and
// tests gcd(A_m -+ d0, N). Throws NoSplit, BudgetExceeded.
FactorResult factor_shanks_squares(const BigInt& n, std::optional<std::size_t> budget = std::nullopt,
                                   std::stop_token stop = {});

// Looks for Delta_m = Delta_k with m != k in the first half period and tests
// gcd(A_m -+ A_k, N). Throws NoSplit, BudgetExceeded.
FactorResult factor_fermat_collision(const BigInt& n, std::optional<std::size_t> budget = std::nullopt,
                                     std::stop_token stop = {});

struct UnitSplit {
  BigInt g;
  bool splits = false;
};

// g = gcd(A_{tau-1} - 1, N). When `a_mod_n` holds A_0 .. A_{tau-1} mod N the
// consequence A_{tau-m-2} = (-1)^(m-1) A_m A_{tau-1} (mod N) is also checked
// on sampled m; a violation throws InternalInvariant.
UnitSplit verify_unit_split(const BigInt& n, const BigInt& a_tau_minus_1, std::span<const BigInt> a_mod_n = {});

// Convergent numerators A_0 .. A_{tau-1} mod N over one period.
std::vector<BigInt> period_numerators_mod_n(const BigInt& n, std::optional<std::size_t> max_steps = std::nullopt);

enum class Strategy { automatic, direct, infrastructure, shanks, fermat };
const char* to_string(Strategy s);
Strategy parse_strategy(const std::string& text);

struct FactorConfig {
  Strategy strategy = Strategy::automatic;
  std::optional<std::size_t> budget;  // expansion steps per pathway
  unsigned threads = 1;
  bool deterministic = false;
  // Primes below this bound are removed by trial division first.
  unsigned long trial_bound = 3;
  // Take R* from the analytic hR (trying hR/k) instead of a full period.
  bool analytic_r_star = false;
  Precision prec = 0;  // 0: default_precision(N)
  InfrastructureOptions infrastructure;
};

// Runs the pathways selected by `config`. Throws NoSplit (with a witness),
// BudgetExceeded or InvalidInput.
FactorResult factor_auto(const BigInt& n, const FactorConfig& config = {});

}  // namespace surd
