#include "surd/cf.hpp"

#include <cmath>
#include <limits>

#include "surd/errors.hpp"

namespace surd {

SurdState init_surd(const BigInt& n) {
  if (n < 2) throw InvalidInput("N must be at least 2, got " + n.get_str());
  const BigInt root = isqrt(n);
  if (root * root == n) throw PerfectSquare(root);
  SurdState s;
  s.n = n;
  s.a0 = root;
  s.m = 0;
  s.a = root;
  s.c = root;
  s.r = n - root * root;
  return s;
}

SurdState surd_step(const SurdState& s) {
  SurdState next;
  next.n = s.n;
  next.a0 = s.a0;
  next.m = s.m + 1;
  mpz_fdiv_q(next.a.get_mpz_t(), BigInt(s.a0 + s.c).get_mpz_t(), s.r.get_mpz_t());
  next.c = next.a * s.r - s.c;
  const BigInt numerator = s.n - next.c * next.c;
  if (mpz_divisible_p(numerator.get_mpz_t(), s.r.get_mpz_t()) == 0) {
    throw InternalInvariant("r_m does not divide N - c_{m+1}^2 at m = " + std::to_string(s.m));
  }
  mpz_divexact(next.r.get_mpz_t(), numerator.get_mpz_t(), s.r.get_mpz_t());
  return next;
}

ConvergentState convergent_init(const BigInt& a0, std::optional<BigInt> modulus) {
  ConvergentState c;
  c.m = 0;
  c.a = a0;
  c.b = 1;
  c.a_prev = 1;
  c.b_prev = 0;
  c.modulus = std::move(modulus);
  if (c.modulus) {
    c.a = mod(c.a, *c.modulus);
    c.a_prev = mod(c.a_prev, *c.modulus);
    c.b = mod(c.b, *c.modulus);
  }
  return c;
}

ConvergentState convergent_step(const ConvergentState& c, const BigInt& a_next) {
  if (a_next <= 0) throw InvalidInput("partial quotients must be positive");
  ConvergentState next;
  next.m = c.m + 1;
  next.modulus = c.modulus;
  next.a = a_next * c.a + c.a_prev;
  next.b = a_next * c.b + c.b_prev;
  next.a_prev = c.a;
  next.b_prev = c.b;
  if (next.modulus) {
    mpz_mod(next.a.get_mpz_t(), next.a.get_mpz_t(), next.modulus->get_mpz_t());
    mpz_mod(next.b.get_mpz_t(), next.b.get_mpz_t(), next.modulus->get_mpz_t());
  }
  return next;
}

DeltaOmegaState delta_omega_init(const BigInt& n, const BigInt& a0) {
  DeltaOmegaState d;
  d.m = 0;
  d.delta = a0 * a0 - n;
  d.delta_prev = 1;
  d.omega = a0;
  return d;
}

DeltaOmegaState delta_omega_at_one(const BigInt& n, const BigInt& a0, const BigInt& a1) {
  const BigInt lead = 1 + a0 * a1;
  DeltaOmegaState d;
  d.m = 1;
  d.delta = lead * lead - n * a1 * a1;
  d.delta_prev = a0 * a0 - n;
  d.omega = lead * a0 - n * a1;
  return d;
}

DeltaOmegaState delta_omega_step(const DeltaOmegaState& d, const BigInt& a_next) {
  DeltaOmegaState next;
  next.m = d.m + 1;
  next.delta = a_next * a_next * d.delta + 2 * a_next * d.omega + d.delta_prev;
  next.delta_prev = d.delta;
  next.omega = d.omega + a_next * d.delta;
  return next;
}

std::size_t default_max_steps(const BigInt& n) {
  const double nd = n.get_d();
  const double bound = std::ceil(0.72 * std::sqrt(nd) * std::log(nd)) + 2.0;
  if (!(bound < static_cast<double>(std::numeric_limits<std::size_t>::max() / 2))) {
    return std::numeric_limits<std::size_t>::max() / 2;
  }
  return static_cast<std::size_t>(std::max(bound, 3.0));
}

std::uint64_t quotient_digest_update(std::uint64_t digest, const BigInt& q) {
  for (const char ch : q.get_str()) {
    digest ^= static_cast<unsigned char>(ch);
    digest *= 0x100000001b3ULL;
  }
  digest ^= static_cast<unsigned char>(',');
  digest *= 0x100000001b3ULL;
  return digest;
}

PeriodSummary expand_period(const BigInt& n, std::optional<std::size_t> max_steps,
                            std::size_t quotient_cap) {
  SurdState s = init_surd(n);
  const std::size_t budget = max_steps.value_or(default_max_steps(n));
  const BigInt end = 2 * s.a0;
  PeriodSummary p;
  p.a0 = s.a0;
  p.quotients_digest = kDigestSeed;
  while (true) {
    if (s.m >= budget) throw BudgetExceeded(budget, "period not closed");
    s = surd_step(s);
    p.quotients_digest = quotient_digest_update(p.quotients_digest, s.a);
    if (p.quotients.size() < quotient_cap) {
      p.quotients.push_back(s.a);
    } else {
      p.quotients_truncated = true;
    }
    if (s.a == end) break;
  }
  p.tau = s.m;
  p.parity = (p.tau % 2 == 0) ? Parity::even : Parity::odd;
  p.ell = p.parity == Parity::odd ? (p.tau - 1) / 2 : (p.tau - 2) / 2;
  return p;
}

bool verify_symmetry(const PeriodSummary& p, std::span<const BigInt> deltas,
                     std::span<const BigInt> omegas) {
  const std::size_t tau = p.tau;
  if (deltas.size() < tau + 1 || omegas.size() < tau + 1) return false;
  const int delta_sign = (tau % 2 == 0) ? 1 : -1;
  for (std::size_t m = 0; m + 3 <= tau; ++m) {
    if (deltas[m] != delta_sign * deltas[tau - m - 2]) return false;
  }
  const int omega_sign = -delta_sign;
  for (std::size_t m = 1; m + 2 <= tau; ++m) {
    if (omegas[tau - m - 1] != omega_sign * omegas[m]) return false;
  }
  return true;
}

SqrtExpansion::SqrtExpansion(const BigInt& n, ConvergentMode mode)
    : mode_(mode), surd_(init_surd(n)), r_prev_(1) {
  delta_omega_ = delta_omega_init(surd_.n, surd_.a0);
  if (mode_ == ConvergentMode::mod_n) {
    convergents_ = convergent_init(surd_.a0, surd_.n);
  } else if (mode_ == ConvergentMode::exact) {
    convergents_ = convergent_init(surd_.a0);
  }
  load_term();
}

void SqrtExpansion::load_term() {
  term_.m = surd_.m;
  term_.a = surd_.a;
  term_.c = surd_.c;
  term_.r = surd_.r;
  term_.delta = delta_omega_.delta;
  term_.delta_prev = delta_omega_.delta_prev;
  term_.omega = delta_omega_.omega;
  if (mode_ != ConvergentMode::none) {
    term_.conv_a = convergents_.a;
    term_.conv_b = convergents_.b;
  }
  BigInt a_next;
  mpz_fdiv_q(a_next.get_mpz_t(), BigInt(surd_.a0 + surd_.c).get_mpz_t(), surd_.r.get_mpz_t());
  next_c_ = a_next * surd_.r - surd_.c;
}

void SqrtExpansion::advance() {
  r_prev_ = surd_.r;
  surd_ = surd_step(surd_);
  delta_omega_ = delta_omega_step(delta_omega_, surd_.a);
  if (mode_ != ConvergentMode::none) convergents_ = convergent_step(convergents_, surd_.a);
  load_term();
}

CentreInfo walk_to_centre(const BigInt& n, std::optional<std::size_t> max_steps,
                          ConvergentMode mode, std::stop_token stop) {
  SqrtExpansion walk(n, mode);
  const std::size_t budget = max_steps.value_or(default_max_steps(n));
  while (true) {
    if (walk.at_odd_centre()) {
      const std::size_t ell = walk.steps();
      return CentreInfo{2 * ell + 1, Parity::odd, ell, walk.term()};
    }
    if (walk.at_even_centre()) {
      const std::size_t ell = walk.steps();
      return CentreInfo{2 * ell + 2, Parity::even, ell, walk.term()};
    }
    if (walk.steps() >= budget) throw BudgetExceeded(budget, "palindrome centre not reached");
    if (stop.stop_requested()) throw BudgetExceeded(walk.steps(), "cancelled");
    walk.advance();
  }
}

}  // namespace surd
