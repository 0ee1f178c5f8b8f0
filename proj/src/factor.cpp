#include "surd/factor.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include "surd/cf.hpp"
#include "surd/errors.hpp"
#include "surd/regulator.hpp"
#include "surd/two_squares.hpp"

namespace surd {

namespace {

std::string form_string(const QForm& f) {
  return "[" + f.a.get_str() + "," + f.b2.get_str() + "," + f.c.get_str() + "]";
}

void check_stop(const std::stop_token& stop, std::size_t steps) {
  if (stop.stop_requested()) throw BudgetExceeded(steps, "cancelled");
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::infrastructure: return "infrastructure";
    case Method::two_squares: return "two_squares";
    case Method::shanks: return "shanks";
    case Method::fermat: return "fermat";
    case Method::trivial: return "trivial";
  }
  return "direct";
}

FactorResult make_split(const BigInt& n, const BigInt& g, Method method,
                        std::map<std::string, std::string> witness, StepCounters steps) {
  if (g <= 1 || g >= n || mpz_divisible_p(n.get_mpz_t(), g.get_mpz_t()) == 0) {
    throw InternalInvariant("improper factor " + g.get_str() + " of " + n.get_str());
  }
  FactorResult r;
  r.n = n;
  r.factors = {g, n / g};
  std::sort(r.factors.begin(), r.factors.end());
  r.method = method;
  r.witness = std::move(witness);
  r.steps = steps;
  return r;
}

std::optional<BigInt> proper_gcd(const BigInt& v, const BigInt& n) {
  BigInt w = abs(v);
  if (sgn(w) == 0) return std::nullopt;
  if (mpz_odd_p(n.get_mpz_t()) != 0) {
    const auto twos = mpz_scan1(w.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(w.get_mpz_t(), w.get_mpz_t(), twos);
  }
  BigInt g = gcd(w, n);
  if (g > 1 && g < n) return g;
  return std::nullopt;
}

FactorResult factor_direct(const BigInt& n, std::optional<std::size_t> max_steps, std::stop_token stop) {
  const CentreInfo centre = walk_to_centre(n, max_steps, ConvergentMode::none, stop);
  if (centre.parity == Parity::odd) throw OddPeriod(centre.tau);
  StepCounters steps;
  steps.cf_steps = centre.ell;
  std::map<std::string, std::string> witness{
      {"index", std::to_string(centre.ell)},
      {"delta", centre.term.delta.get_str()},
      {"tau", std::to_string(centre.tau)},
  };
  if (mpz_odd_p(n.get_mpz_t()) != 0) witness["jacobi_2_n"] = std::to_string(jacobi(BigInt(2), n));
  if (auto g = proper_gcd(centre.term.delta, n)) {
    return make_split(n, *g, Method::direct, std::move(witness), steps);
  }
  throw NoSplit("midpoint |Delta_" + std::to_string(centre.ell) + "| = " + BigInt(abs(centre.term.delta)).get_str() +
                    " divides 4N only trivially",
                std::move(witness));
}

GiantStepTable build_giant_step_table(const BigInt& n, const HighPrecReal& r_star, Precision prec,
                                      const InfrastructureOptions& options, StepCounters& counters) {
  if (r_star.sign() <= 0) throw DomainError("R* must be positive");
  const HighPrecReal ln2 = log(HighPrecReal(2L, prec));
  FormWithDistance f = principal_form(n, prec);
  std::size_t m = 0;
  constexpr std::size_t kMaxShortWalk = 64;
  while (m < 2 || f.dist <= ln2) {
    if (m >= kMaxShortWalk) break;
    f = step_forward(f);
    ++m;
    ++counters.cf_steps;
  }
  GiantStepTable table;
  table.ell = m;
  table.d_ell = f.dist;
  const double ratio = (r_star / f.dist).to_double();
  table.j_t = ratio <= 1.0 ? 0 : static_cast<std::size_t>(std::ceil(std::log2(ratio)));
  table.entries.reserve(table.j_t + 1);
  table.entries.push_back(f);
  for (std::size_t j = 1; j <= table.j_t; ++j) {
    std::size_t reduction_steps = 0;
    table.entries.push_back(compose(table.entries.back(), table.entries.back(), options.compose, &reduction_steps));
    ++counters.compositions;
    counters.reduction_steps += reduction_steps;
  }
  return table;
}

FactorResult factor_infrastructure(const BigInt& n, const HighPrecReal& r_star, Precision prec,
                                   const InfrastructureOptions& options, std::stop_token stop) {
  StepCounters counters;
  const GiantStepTable table = build_giant_step_table(n, r_star, prec, options, counters);
  const HighPrecReal target = ldexp(r_star.with_precision(prec), -1);

  // Binary descent: add 2^j d_ell while the running distance stays at or
  // below R*/2.
  std::optional<FormWithDistance> cur;
  for (std::size_t j = table.j_t + 1; j-- > 0;) {
    check_stop(stop, counters.compositions);
    const FormWithDistance& entry = table.entries[j];
    if (!cur) {
      if (entry.dist <= target) cur = entry;
      continue;
    }
    if (cur->dist + entry.dist > target) continue;
    std::size_t reduction_steps = 0;
    FormWithDistance next = compose(*cur, entry, options.compose, &reduction_steps);
    ++counters.compositions;
    counters.reduction_steps += reduction_steps;
    if (next.dist <= target) cur = std::move(next);
  }
  if (!cur) cur = principal_form(n, prec);

  std::map<std::string, std::string> witness{
      {"ell", std::to_string(table.ell)},
      {"j_t", std::to_string(table.j_t)},
      {"d_ell", table.d_ell.to_string(12)},
      {"landing_distance", cur->dist.to_string(12)},
      {"target", target.to_string(12)},
  };
  auto test = [&](const FormWithDistance& f, long offset) -> std::optional<FactorResult> {
    for (const BigInt* v : {&f.form.a, &f.form.c}) {
      if (auto g = proper_gcd(*v, n)) {
        witness["form"] = form_string(f.form);
        witness["sweep_offset"] = std::to_string(offset);
        witness["distance"] = f.dist.to_string(12);
        return make_split(n, *g, Method::infrastructure, witness, counters);
      }
    }
    return std::nullopt;
  };

  if (auto r = test(*cur, 0)) return std::move(*r);
  const std::size_t width = options.sweep_width != 0 ? options.sweep_width : 64 + 8 * bit_length(n);
  const std::size_t wide = width * std::max<std::size_t>(options.widen_factor, 1);
  FormWithDistance forward = *cur;
  FormWithDistance backward = *cur;
  for (std::size_t k = 1; k <= wide; ++k) {
    check_stop(stop, counters.rho_steps);
    forward = step_forward(forward);
    ++counters.rho_steps;
    if (auto r = test(forward, static_cast<long>(k))) return std::move(*r);
    backward = step_backward(backward);
    ++counters.rho_steps;
    if (auto r = test(backward, -static_cast<long>(k))) return std::move(*r);
  }
  witness["rho_steps"] = std::to_string(counters.rho_steps);
  witness["compositions"] = std::to_string(counters.compositions);
  throw NoSplit("infrastructure sweep exhausted", std::move(witness));
}

FactorResult factor_shanks_squares(const BigInt& n, std::optional<std::size_t> budget, std::stop_token stop) {
  SqrtExpansion walk(n, ConvergentMode::mod_n);
  // One period of Delta is 2 tau when tau is odd.
  const std::size_t limit = budget.value_or(2 * default_max_steps(n));
  const BigInt end = 2 * walk.a0();
  std::size_t tau = 0;
  std::size_t squares = 0;
  while (true) {
    if (walk.steps() >= limit) throw BudgetExceeded(limit, "no usable square within budget");
    check_stop(stop, walk.steps());
    walk.advance();
    const auto& t = walk.term();
    if (tau == 0 && t.a == end) tau = t.m;
    if (tau != 0 && t.m >= (tau % 2 == 0 ? tau : 2 * tau)) break;
    BigInt d0;
    if (sgn(t.delta) <= 0 || t.delta == 1 || !is_perfect_square(t.delta, &d0)) continue;
    ++squares;
    for (const BigInt& cand : {BigInt(t.conv_a - d0), BigInt(t.conv_a + d0)}) {
      const BigInt g = gcd(cand, n);
      if (g > 1 && g < n) {
        StepCounters steps;
        steps.cf_steps = t.m;
        return make_split(n, g, Method::shanks,
                          {{"index", std::to_string(t.m)}, {"delta", t.delta.get_str()}, {"d0", d0.get_str()},
                           {"a_mod_n", t.conv_a.get_str()}, {"squares_seen", std::to_string(squares)}},
                          steps);
      }
    }
  }
  throw NoSplit("no square Delta gave a proper factor over one period",
                {{"tau", std::to_string(tau)}, {"squares_seen", std::to_string(squares)}});
}

FactorResult factor_fermat_collision(const BigInt& n, std::optional<std::size_t> budget, std::stop_token stop) {
  SqrtExpansion walk(n, ConvergentMode::mod_n);
  const std::size_t limit = budget.value_or(default_max_steps(n));
  struct Seen {
    std::size_t m;
    BigInt a;
  };
  std::map<BigInt, std::vector<Seen>> seen;
  std::size_t collisions = 0;
  while (true) {
    const auto& t = walk.term();
    auto& bucket = seen[t.delta];
    for (const Seen& s : bucket) {
      ++collisions;
      for (const BigInt& cand : {BigInt(t.conv_a - s.a), BigInt(t.conv_a + s.a)}) {
        const BigInt g = gcd(cand, n);
        if (g > 1 && g < n) {
          StepCounters steps;
          steps.cf_steps = t.m;
          return make_split(n, g, Method::fermat,
                            {{"index", std::to_string(t.m)}, {"earlier_index", std::to_string(s.m)},
                             {"delta", t.delta.get_str()}, {"a_m", t.conv_a.get_str()}, {"a_n", s.a.get_str()}},
                            steps);
        }
      }
    }
    bucket.push_back(Seen{t.m, t.conv_a});
    if (walk.at_odd_centre() || walk.at_even_centre()) break;
    if (walk.steps() >= limit) throw BudgetExceeded(limit, "no usable collision within budget");
    check_stop(stop, walk.steps());
    walk.advance();
  }
  throw NoSplit("no collision in the first half period gave a proper factor",
                {{"centre", std::to_string(walk.steps())}, {"collisions", std::to_string(collisions)}});
}

UnitSplit verify_unit_split(const BigInt& n, const BigInt& a_tau_minus_1, std::span<const BigInt> a_mod_n) {
  UnitSplit out;
  out.g = gcd(mod(a_tau_minus_1 - 1, n), n);
  out.splits = out.g > 1 && out.g < n;
  const std::size_t tau = a_mod_n.size();
  if (tau >= 2) {
    const BigInt unit = mod(a_tau_minus_1, n);
    const std::size_t stride = std::max<std::size_t>(1, (tau - 1) / 64);
    for (std::size_t m = 0; m + 2 <= tau; m += stride) {
      BigInt rhs = a_mod_n[m] * unit;
      if (m % 2 == 0) rhs = -rhs;  // (-1)^(m-1)
      if (mod(rhs - a_mod_n[tau - m - 2], n) != 0) {
        throw InternalInvariant("A_{tau-m-2} != (-1)^(m-1) A_m A_{tau-1} mod N at m = " + std::to_string(m));
      }
    }
  }
  return out;
}

std::vector<BigInt> period_numerators_mod_n(const BigInt& n, std::optional<std::size_t> max_steps) {
  const PeriodSummary p = expand_period(n, max_steps, 0);
  SqrtExpansion walk(n, ConvergentMode::mod_n);
  std::vector<BigInt> out;
  out.reserve(p.tau);
  while (true) {
    out.push_back(walk.term().conv_a);
    if (out.size() == p.tau) break;
    walk.advance();
  }
  return out;
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::direct: return "direct";
    case Strategy::infrastructure: return "infrastructure";
    case Strategy::shanks: return "shanks";
    case Strategy::fermat: return "fermat";
  }
  return "auto";
}

Strategy parse_strategy(const std::string& text) {
  for (Strategy s : {Strategy::automatic, Strategy::direct, Strategy::infrastructure, Strategy::shanks,
                     Strategy::fermat}) {
    if (text == to_string(s)) return s;
  }
  throw InvalidInput("unknown strategy '" + text + "'");
}

namespace {

using Pathway = std::function<FactorResult(std::stop_token)>;

struct Outcome {
  std::optional<FactorResult> result;
  std::optional<std::size_t> odd_tau;
  bool budget_hit = false;
  std::map<std::string, std::string> witness;
};

void absorb(Outcome& out, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const OddPeriod& e) {
    out.odd_tau = e.tau();
    out.witness[name] = "odd period";
  } catch (const NoSplit& e) {
    out.witness[name] = e.what();
    for (const auto& [k, v] : e.witness()) out.witness[name + "." + k] = v;
  } catch (const BudgetExceeded& e) {
    out.budget_hit = true;
    out.witness[name] = e.what();
  }
}

// Runs pathways one after another, or concurrently against a shared stop
// source when more than one thread is available.
Outcome run_pathways(const std::vector<std::pair<std::string, Pathway>>& pathways, unsigned threads) {
  Outcome out;
  if (threads <= 1 || pathways.size() <= 1) {
    for (const auto& [name, fn] : pathways) {
      absorb(out, name, [&] { out.result = fn({}); });
      if (out.result) break;
    }
    return out;
  }
  std::mutex mu;
  std::stop_source source;
  std::exception_ptr failure;
  {
    std::vector<std::jthread> pool;
    for (const auto& [name, fn] : pathways) {
      pool.emplace_back([&, name = name, fn = fn] {
        Outcome local;
        try {
          absorb(local, name, [&] { local.result = fn(source.get_token()); });
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
          source.request_stop();
          return;
        }
        std::lock_guard lock(mu);
        if (local.result && !out.result) {
          out.result = std::move(local.result);
          source.request_stop();
        }
        if (local.odd_tau) out.odd_tau = local.odd_tau;
        // A cancelled pathway is not a budget failure.
        if (local.budget_hit && !source.stop_requested()) out.budget_hit = true;
        for (auto& [k, v] : local.witness) out.witness[k] = v;
      });
      if (pool.size() >= threads) {
        for (auto& t : pool) t.join();
        pool.clear();
        if (out.result) break;
      }
    }
  }
  if (failure && !out.result) std::rethrow_exception(failure);
  return out;
}

std::optional<FactorResult> trial_split(const BigInt& n, unsigned long bound) {
  for (unsigned long p = 2; p < bound; ++p) {
    if (BigInt(p) >= n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      return make_split(n, BigInt(p), Method::trivial, {{"trial_divisor", std::to_string(p)}});
    }
  }
  return std::nullopt;
}

void describe_odd_period(const BigInt& n, std::size_t tau, std::map<std::string, std::string>& witness) {
  witness["tau"] = std::to_string(tau);
  try {
    const TwoSquares rep = legendre_two_squares(n);
    const BigInt s = sqrt_minus_one(rep);
    witness["two_squares"] = rep.x.get_str() + "^2+" + rep.y.get_str() + "^2";
    witness["sqrt_minus_one"] = s.get_str();
    witness["note"] = "odd period; two-squares: " + witness["two_squares"] + "; sqrt(-1)=" + s.get_str();
  } catch (const NonInvertible& e) {
    witness["note"] = "odd period; representation shares the factor " + e.factor().get_str();
  }
}

std::vector<HighPrecReal> analytic_r_star_candidates(const BigInt& n, Precision prec) {
  const AnalyticHR hr = hr_fast_series(discriminant_for(n), prec);
  std::vector<HighPrecReal> out;
  for (long k = 1; k <= 16; ++k) {
    for (long s : {1L, 3L}) {
      if (s == 3 && k % 3 == 0) continue;
      out.push_back(hr.hr * HighPrecReal(s, prec) / HighPrecReal(k, prec));
    }
  }
  return out;
}

FactorResult run_infrastructure(const BigInt& n, const FactorConfig& config, Precision prec, std::stop_token stop) {
  // The analytic value needs a fundamental discriminant; otherwise use the period.
  if (!config.analytic_r_star || !is_valid_discriminant(discriminant_for(n))) {
    const RegulatorResult reg = regulator_from_cf(n, prec, config.budget);
    FactorResult r = factor_infrastructure(n, reg.r_star, prec, config.infrastructure, stop);
    r.steps.cf_steps += reg.tau;
    r.witness["r_star"] = reg.r_star.to_string(12);
    return r;
  }
  std::map<std::string, std::string> witness;
  for (const HighPrecReal& r_star : analytic_r_star_candidates(n, prec)) {
    try {
      FactorResult r = factor_infrastructure(n, r_star, prec, config.infrastructure, stop);
      r.witness["r_star"] = r_star.to_string(12);
      r.witness["r_star_source"] = "analytic";
      return r;
    } catch (const NoSplit&) {
    }
  }
  throw NoSplit("no analytic R* candidate led to a split", std::move(witness));
}

}  // namespace

FactorResult factor_auto(const BigInt& n, const FactorConfig& config) {
  if (n < 2) throw InvalidInput("N must be at least 2, got " + n.get_str());
  const Precision prec = config.prec != 0 ? config.prec : default_precision(n);
  const unsigned threads = config.deterministic ? 1U : std::max(1U, config.threads);
  const std::optional<std::size_t> budget = config.budget;

  switch (config.strategy) {
    case Strategy::direct:
      return factor_direct(n, budget);
    case Strategy::infrastructure:
      return run_infrastructure(n, config, prec, {});
    case Strategy::shanks:
      return factor_shanks_squares(n, budget);
    case Strategy::fermat:
      return factor_fermat_collision(n, budget);
    case Strategy::automatic:
      break;
  }

  if (auto r = trial_split(n, config.trial_bound)) return std::move(*r);
  BigInt root;
  if (is_perfect_square(n, &root)) {
    return make_split(n, root, Method::trivial, {{"perfect_square", root.get_str()}});
  }
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    std::map<std::string, std::string> witness{{"probable_prime", "true"}};
    if (n > 2 && mod(n, 4) == 1) describe_odd_period(n, expand_period(n, budget, 0).tau, witness);
    throw NoSplit("N is a probable prime", std::move(witness));
  }

  std::vector<std::pair<std::string, Pathway>> pathways{
      {"direct", [&](std::stop_token st) { return factor_direct(n, budget, st); }},
      {"shanks", [&](std::stop_token st) { return factor_shanks_squares(n, budget, st); }},
      {"fermat", [&](std::stop_token st) { return factor_fermat_collision(n, budget, st); }},
  };
  Outcome outcome = run_pathways(pathways, threads);
  if (outcome.result) return std::move(*outcome.result);

  // The midpoint was out of reach: giant steps towards R*/2 instead.
  if (!outcome.odd_tau && outcome.budget_hit) {
    absorb(outcome, "infrastructure", [&] { outcome.result = run_infrastructure(n, config, prec, {}); });
    if (outcome.result) return std::move(*outcome.result);
  }

  std::map<std::string, std::string> witness = std::move(outcome.witness);
  if (outcome.odd_tau) {
    describe_odd_period(n, *outcome.odd_tau, witness);
    throw NoSplit("odd period and no second square root of -1", std::move(witness));
  }
  if (outcome.budget_hit) throw BudgetExceeded(budget.value_or(default_max_steps(n)), "no pathway finished");
  throw NoSplit("no pathway produced a proper factor", std::move(witness));
}

}  // namespace surd
