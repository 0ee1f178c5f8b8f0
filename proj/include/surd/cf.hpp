#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stop_token>
#include <vector>

#include "surd/bigint.hpp"

namespace surd {

// One step of the expansion of sqrt(N): the complete quotient at index m is
// (sqrt(N) + c) / r and `a` is the partial quotient a_m.
struct SurdState {
  BigInt n;
  BigInt a0;
  std::size_t m = 0;
  BigInt a;
  BigInt c;
  BigInt r;
};

// Throws InvalidInput for N < 2 and PerfectSquare for N = s^2.
SurdState init_surd(const BigInt& n);

// a_{m+1} = floor((a0 + c_m) / r_m), c_{m+1} = a_{m+1} r_m - c_m,
// r_{m+1} = (N - c_{m+1}^2) / r_m. Throws InternalInvariant on an inexact division.
SurdState surd_step(const SurdState& s);

// Convergent numerators/denominators. When `modulus` is set all four values
// are kept reduced mod it and the determinant identity no longer applies.
struct ConvergentState {
  std::size_t m = 0;
  BigInt a;       // A_m
  BigInt b;       // B_m
  BigInt a_prev;  // A_{m-1}
  BigInt b_prev;  // B_{m-1}
  std::optional<BigInt> modulus;
};

// State at m = 0: A_{-1} = 1, B_{-1} = 0, A_0 = a0, B_0 = 1.
ConvergentState convergent_init(const BigInt& a0, std::optional<BigInt> modulus = std::nullopt);
// Throws InvalidInput for a_next <= 0.
ConvergentState convergent_step(const ConvergentState& c, const BigInt& a_next);

// Delta_m = A_m^2 - N B_m^2 and Omega_m = A_m A_{m-1} - N B_m B_{m-1}.
struct DeltaOmegaState {
  std::size_t m = 0;
  BigInt delta;       // Delta_m
  BigInt delta_prev;  // Delta_{m-1}
  BigInt omega;       // Omega_m
};

// State at m = 0 with the conventions Delta_{-1} = 1 and Omega_0 = a0, from
// which one recurrence step reproduces the closed-form Delta_1 and Omega_1.
DeltaOmegaState delta_omega_init(const BigInt& n, const BigInt& a0);
// Delta_1 = (1 + a0 a1)^2 - N a1^2, Delta_0 = a0^2 - N, Omega_1 = (1 + a0 a1) a0 - N a1.
DeltaOmegaState delta_omega_at_one(const BigInt& n, const BigInt& a0, const BigInt& a1);
// Delta_{m+1} = a^2 Delta_m + 2 a Omega_m + Delta_{m-1}; Omega_{m+1} = Omega_m + a Delta_m.
DeltaOmegaState delta_omega_step(const DeltaOmegaState& d, const BigInt& a_next);

enum class Parity { even, odd };

struct PeriodSummary {
  std::size_t tau = 0;
  BigInt a0;
  // a_1 .. a_tau; truncated to `quotient_cap` entries for huge periods, in
  // which case `quotients_digest` still covers every term.
  std::vector<BigInt> quotients;
  bool quotients_truncated = false;
  std::uint64_t quotients_digest = 0;
  Parity parity = Parity::even;
  // (tau - 1) / 2 for odd tau, (tau - 2) / 2 for even tau.
  std::size_t ell = 0;
};

// ceil(0.72 sqrt(N) ln N) + 2.
std::size_t default_max_steps(const BigInt& n);

inline constexpr std::size_t kDefaultQuotientCap = 10'000'000;

// Iterates surd_step until a_m = 2 a0. Throws BudgetExceeded when more than
// `max_steps` steps would be needed (default: default_max_steps(N)).
PeriodSummary expand_period(const BigInt& n, std::optional<std::size_t> max_steps = std::nullopt,
                            std::size_t quotient_cap = kDefaultQuotientCap);

// FNV-1a over the decimal digits of each quotient; used for quotient digests.
std::uint64_t quotient_digest_update(std::uint64_t digest, const BigInt& q);
inline constexpr std::uint64_t kDigestSeed = 0xcbf29ce484222325ULL;

// Checks Delta_m = (-1)^tau Delta_{tau-m-2} for 0 <= m <= tau-3 and
// Omega_{tau-m-1} = (-1)^(tau+1) Omega_m for 1 <= m <= tau-2. `deltas` holds
// Delta_0..Delta_tau and `omegas` holds Omega_0..Omega_tau (Omega_0 unused).
bool verify_symmetry(const PeriodSummary& p, std::span<const BigInt> deltas,
                     std::span<const BigInt> omegas);

enum class ConvergentMode { none, exact, mod_n };

// Streaming walk over the expansion. Each term carries the surd data, the
// Delta/Omega pair from the linear recurrences and, depending on the mode,
// the convergents (exact or mod N).
class SqrtExpansion {
 public:
  struct Term {
    std::size_t m = 0;
    BigInt a;  // a_m
    BigInt c;  // c_m
    BigInt r;  // r_m
    BigInt delta;       // Delta_m
    BigInt delta_prev;  // Delta_{m-1}
    BigInt omega;       // Omega_m (a0 at m = 0)
    BigInt conv_a;      // A_m, when tracked
    BigInt conv_b;      // B_m, when tracked
  };

  explicit SqrtExpansion(const BigInt& n, ConvergentMode mode = ConvergentMode::none);

  const Term& term() const noexcept { return term_; }
  const BigInt& n() const noexcept { return surd_.n; }
  const BigInt& a0() const noexcept { return surd_.a0; }
  std::size_t steps() const noexcept { return term_.m; }

  void advance();

  // Palindrome centre tests on the current term: odd period when r_m equals
  // r_{m-1}, even period when c_{m+1} (already known) equals c_m.
  bool at_odd_centre() const noexcept { return term_.r == r_prev_; }
  bool at_even_centre() const noexcept { return next_c_ == term_.c; }

 private:
  void load_term();

  ConvergentMode mode_;
  SurdState surd_;
  DeltaOmegaState delta_omega_;
  ConvergentState convergents_;
  BigInt r_prev_;
  BigInt next_c_;
  Term term_;
};

// Result of walking to the first palindrome centre. The period is
// 2 * centre + 1 (odd) or 2 * centre + 2 (even), so tau is known after about
// half a period.
struct CentreInfo {
  std::size_t tau = 0;
  Parity parity = Parity::even;
  std::size_t ell = 0;
  SqrtExpansion::Term term;  // the term at index ell
};

CentreInfo walk_to_centre(const BigInt& n, std::optional<std::size_t> max_steps = std::nullopt,
                          ConvergentMode mode = ConvergentMode::none,
                          std::stop_token stop = {});

}  // namespace surd
