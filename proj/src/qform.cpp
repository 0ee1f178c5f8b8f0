#include "surd/qform.hpp"

#include <cmath>

#include "surd/cf.hpp"
#include "surd/errors.hpp"

namespace surd {

namespace {

int sign_of(const BigInt& x) { return sgn(x) < 0 ? -1 : 1; }

// Representative of x mod m used by rho: the largest value <= floor(sqrt N)
// while m < 2 sqrt N, the centred one in (-m/2, m/2] otherwise.
BigInt normalize_b(const BigInt& x, const BigInt& m, const BigInt& n, const BigInt& a0) {
  BigInt r = mod(x, m);
  if (m * m < 4 * n) {
    BigInt k;
    mpz_fdiv_q(k.get_mpz_t(), BigInt(a0 - r).get_mpz_t(), m.get_mpz_t());
    return r + k * m;
  }
  if (2 * r > m) r -= m;
  return r;
}

// Largest representative of x mod m not exceeding a0.
BigInt top_representative(const BigInt& x, const BigInt& m, const BigInt& a0) {
  const BigInt r = mod(x, m);
  BigInt k;
  mpz_fdiv_q(k.get_mpz_t(), BigInt(a0 - r).get_mpz_t(), m.get_mpz_t());
  return r + k * m;
}

bool ideal_is_reduced(const IdealRep& ideal, const BigInt& a0) {
  // |sqrt N - a| < b < sqrt N, using a0 = floor(sqrt N) and irrational sqrt N.
  return sgn(ideal.b) > 0 && ideal.b <= a0 && ideal.norm + ideal.b > a0 && ideal.norm - ideal.b <= a0;
}

BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
  if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0) throw InternalInvariant(what);
  BigInt q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

struct IdealStep {
  IdealRep ideal;
  HighPrecReal increment;
};

// I -> ((b - sqrt N) / a) I, moving forward by step_distance(b).
IdealStep ideal_rho(const IdealRep& ideal, const BigInt& n, const BigInt& a0, Precision prec) {
  const BigInt c = exact_div(ideal.b * ideal.b - n, ideal.norm, "ideal norm does not divide b^2 - N");
  IdealRep next;
  next.norm = abs(c);
  next.b = normalize_b(-ideal.b, next.norm, n, a0);
  next.sign = ideal.sign * sign_of(c);
  return {std::move(next), step_distance(ideal.b, n, prec)};
}

IdealStep ideal_rho_inverse(const IdealRep& ideal, const BigInt& n, const BigInt& a0, Precision prec) {
  const BigInt b = top_representative(-ideal.b, ideal.norm, a0);
  const BigInt c = exact_div(b * b - n, ideal.norm, "ideal norm does not divide b^2 - N");
  IdealRep prev;
  prev.norm = abs(c);
  prev.b = b;
  prev.sign = ideal.sign * sign_of(c);
  return {std::move(prev), step_distance(b, n, prec)};
}

struct IdealReduction {
  IdealRep ideal;
  HighPrecReal increment;
  std::size_t steps = 0;
};

IdealReduction reduce_ideal(IdealRep ideal, const BigInt& n, Precision prec) {
  const BigInt a0 = isqrt(n);
  IdealReduction out{std::move(ideal), HighPrecReal(prec), 0};
  if (ideal_is_reduced(out.ideal, a0)) return out;
  out.ideal.b = normalize_b(out.ideal.b, out.ideal.norm, n, a0);
  const std::size_t limit = 1000 + 16 * (bit_length(out.ideal.norm) + bit_length(n));
  while (!ideal_is_reduced(out.ideal, a0)) {
    if (out.steps > limit) throw InternalInvariant("reduction did not terminate");
    IdealStep step = ideal_rho(out.ideal, n, a0, prec);
    out.ideal = std::move(step.ideal);
    out.increment += step.increment;
    ++out.steps;
  }
  return out;
}

}  // namespace

QForm form_at(const BigInt& n, const BigInt& delta_m, const BigInt& omega_m, const BigInt& delta_prev) {
  if (omega_m * omega_m - delta_m * delta_prev != n) {
    throw DiscriminantMismatch("Omega^2 - Delta Delta' != N for N = " + n.get_str());
  }
  return QForm{delta_m, 2 * omega_m, delta_prev, n};
}

Signature signature(const QForm& f, SignatureReading reading, std::size_t m) {
  const int sa = sgn(f.a);
  const int sb = (reading == SignatureReading::alternating && m % 2 == 1) ? -sgn(f.b2) : sgn(f.b2);
  const int sc = sgn(f.c);
  if (sa < 0 && sb > 0 && sc > 0) return Signature::minus_plus_plus;
  if (sa > 0 && sb < 0 && sc < 0) return Signature::plus_minus_minus;
  return Signature::other;
}

const char* to_string(Signature s) {
  switch (s) {
    case Signature::minus_plus_plus: return "(-,+,+)";
    case Signature::plus_minus_minus: return "(+,-,-)";
    case Signature::other: return "other";
  }
  return "other";
}

IdealRep to_ideal(const QForm& f) {
  if (sgn(f.c) == 0) throw NotIndefinite("form with c = 0 has a square discriminant");
  if (f.discriminant() != 4 * f.n) throw DiscriminantMismatch("form discriminant is not 4N");
  const int s = sign_of(f.c);
  return IdealRep{abs(f.c), s * f.half_b(), s};
}

QForm from_ideal(const IdealRep& ideal, const BigInt& n) {
  const BigInt c = exact_div(ideal.b * ideal.b - n, ideal.norm, "ideal norm does not divide b^2 - N");
  return QForm{ideal.sign * c, 2 * ideal.sign * ideal.b, ideal.sign * ideal.norm, n};
}

bool is_reduced(const QForm& f) {
  if (sgn(f.c) == 0) return false;
  return ideal_is_reduced(to_ideal(f), isqrt(f.n));
}

HighPrecReal step_distance(const BigInt& b, const BigInt& n, Precision prec) {
  if (sgn(b) == 0) return HighPrecReal(prec);
  const Precision wp = prec + 16;
  const HighPrecReal root = sqrt(n, wp);
  const HighPrecReal gap(BigInt(abs(b * b - n)), wp);
  HighPrecReal out(wp);
  if (sgn(b) > 0) {
    out = log(HighPrecReal(b, wp) + root) - ldexp(log(gap), -1);
  } else {
    out = ldexp(log(gap), -1) - log(root - HighPrecReal(b, wp));
  }
  return out.with_precision(prec);
}

HighPrecReal distance_increment(const BigInt& omega_m, std::size_t m, const BigInt& n, Precision prec) {
  if (omega_m * omega_m >= n) throw DomainError("|Omega_m| must be below sqrt N");
  const BigInt signed_omega = (m % 2 == 0) ? omega_m : BigInt(-omega_m);
  return step_distance(signed_omega, n, prec);
}

RhoStep rho_plus(const QForm& f, Precision prec) {
  IdealStep step = ideal_rho(to_ideal(f), f.n, isqrt(f.n), prec);
  return {from_ideal(step.ideal, f.n), std::move(step.increment)};
}

RhoStep rho_minus(const QForm& f, Precision prec) {
  IdealStep step = ideal_rho_inverse(to_ideal(f), f.n, isqrt(f.n), prec);
  return {from_ideal(step.ideal, f.n), std::move(step.increment)};
}

Reduction reduce(const QForm& f, Precision prec) {
  if (sgn(f.a * f.c) > 0) throw NotIndefinite("a c > 0");
  IdealReduction r = reduce_ideal(to_ideal(f), f.n, prec);
  if (r.steps == 0) return {f, std::move(r.increment), 0};
  return {from_ideal(r.ideal, f.n), std::move(r.increment), r.steps};
}

IdealProduct multiply(const IdealRep& lhs, const IdealRep& rhs, const BigInt& n) {
  BigInt d1, u1, v1;
  mpz_gcdext(d1.get_mpz_t(), u1.get_mpz_t(), v1.get_mpz_t(), lhs.norm.get_mpz_t(), rhs.norm.get_mpz_t());
  const BigInt b_sum = lhs.b + rhs.b;
  BigInt d, u2, w;
  mpz_gcdext(d.get_mpz_t(), u2.get_mpz_t(), w.get_mpz_t(), d1.get_mpz_t(), b_sum.get_mpz_t());
  const BigInt u = u2 * u1;
  const BigInt v = u2 * v1;
  IdealProduct out;
  out.content = d;
  out.ideal.norm = exact_div(lhs.norm * rhs.norm, d * d, "ideal product norm");
  const BigInt numerator = u * lhs.norm * rhs.b + v * rhs.norm * lhs.b + w * (lhs.b * rhs.b + n);
  out.ideal.b = mod(exact_div(numerator, d, "ideal product middle term"), out.ideal.norm);
  out.ideal.sign = lhs.sign * rhs.sign;
  return out;
}

FormWithDistance compose(const FormWithDistance& f, const FormWithDistance& g,
                         const ComposeOptions& options, std::size_t* reduction_steps) {
  if (f.form.n != g.form.n) throw DiscriminantMismatch("composing forms of different discriminants");
  const BigInt& n = f.form.n;
  const Precision prec = std::max(f.dist.precision(), g.dist.precision());
  IdealProduct product = multiply(to_ideal(f.form), to_ideal(g.form), n);
  IdealReduction r = reduce_ideal(std::move(product.ideal), n, prec);
  if (reduction_steps != nullptr) *reduction_steps = r.steps;
  FormWithDistance out{from_ideal(r.ideal, n), f.dist + g.dist + r.increment, f.err + g.err};
  const double growth = options.err_log_factor * std::log(n.get_d());
  out.err += HighPrecReal(growth, prec);
  return out;
}

FormWithDistance doubling(const FormWithDistance& f, unsigned k, const ComposeOptions& options) {
  FormWithDistance out = f;
  for (unsigned i = 0; i < k; ++i) out = compose(out, out, options);
  return out;
}

FormWithDistance step_forward(const FormWithDistance& f) {
  RhoStep step = rho_plus(f.form, f.dist.precision());
  return {std::move(step.form), f.dist + step.increment, f.err};
}

FormWithDistance step_backward(const FormWithDistance& f) {
  RhoStep step = rho_minus(f.form, f.dist.precision());
  return {std::move(step.form), f.dist - step.increment, f.err};
}

FormWithDistance principal_form(const BigInt& n, Precision prec) {
  const BigInt a0 = isqrt(n);
  if (a0 * a0 == n) throw PerfectSquare(a0);
  return {QForm{a0 * a0 - n, 2 * a0, 1, n}, HighPrecReal(prec), HighPrecReal(prec)};
}

FormWithDistance cycle_form(const BigInt& n, std::size_t m, Precision prec) {
  SqrtExpansion walk(n);
  HighPrecReal dist(prec);
  while (walk.steps() < m) {
    dist += distance_increment(walk.term().omega, walk.steps(), n, prec);
    walk.advance();
  }
  const auto& t = walk.term();
  return {form_at(n, t.delta, t.omega, t.delta_prev), std::move(dist), HighPrecReal(prec)};
}

}  // namespace surd
