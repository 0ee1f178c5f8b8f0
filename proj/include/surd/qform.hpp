#pragma once

#include <cstddef>

#include "surd/bigint.hpp"
#include "surd/highprec.hpp"

namespace surd {

// a x^2 + b2 x y + c y^2 with b2^2 - 4 a c = 4 N. On the principal cycle the
// coefficients are [Delta_m, 2 Omega_m, Delta_{m-1}].
struct QForm {
  BigInt a;
  BigInt b2;
  BigInt c;
  BigInt n;

  BigInt half_b() const { return b2 / 2; }
  BigInt discriminant() const { return b2 * b2 - 4 * a * c; }
  friend bool operator==(const QForm&, const QForm&) = default;
};

// Throws DiscriminantMismatch unless Omega^2 - Delta * Delta_prev = N.
QForm form_at(const BigInt& n, const BigInt& delta_m, const BigInt& omega_m, const BigInt& delta_prev);

enum class Signature { minus_plus_plus, plus_minus_minus, other };

// How the middle coefficient is read. `raw` uses (a, b2, c) as stored;
// `alternating` flips b2 on odd cycle indices m, i.e. (Delta_m, (-1)^m Omega_m,
// Delta_{m-1}). Only the raw reading alternates between the two reduced
// triples along the cycle.
enum class SignatureReading { raw, alternating };

// Sign triple of (a, b2, c).
Signature signature(const QForm& f, SignatureReading reading = SignatureReading::raw,
                    std::size_t m = 0);
const char* to_string(Signature s);

// |sqrt(N) - |c|| < |b| < sqrt(N) with a c < 0 and the cycle sign rule
// (b carries the sign of c).
bool is_reduced(const QForm& f);

// Eq.-5 style step length 1/2 ln|(b + sqrt N) / (b - sqrt N)|, evaluated
// without cancellation for either sign of b.
HighPrecReal step_distance(const BigInt& b, const BigInt& n, Precision prec);

// 1/2 ln((sqrt N + (-1)^m Omega_m) / (sqrt N - (-1)^m Omega_m)), the distance
// from f_m to f_{m+1}. Throws DomainError when |Omega_m| >= sqrt N.
HighPrecReal distance_increment(const BigInt& omega_m, std::size_t m, const BigInt& n, Precision prec);

struct RhoStep {
  QForm form;
  HighPrecReal increment;  // distance moved (positive for rho_plus on the cycle)
};

// f_m -> f_{m+1}: [a, 2b, c] -> [(b1^2 - N)/a, 2 b1, a] with b1 = b mod a taken
// as the largest representative of absolute value below sqrt N.
RhoStep rho_plus(const QForm& f, Precision prec);
// f_m -> f_{m-1}, the inverse of rho_plus on reduced forms. `increment` is
// the (positive) distance of the undone forward step.
RhoStep rho_minus(const QForm& f, Precision prec);

struct Reduction {
  QForm form;
  HighPrecReal increment;  // signed sum of the step distances taken
  std::size_t steps = 0;
};

// Reduces an indefinite form by repeated rho steps. Throws NotIndefinite
// when a c > 0.
Reduction reduce(const QForm& f, Precision prec);

// Integral ideal [norm, b + sqrt N] of Z[sqrt N] together with the sign of
// the norm of a generator; the correspondence with QForm is
// norm = |c|, b = sign(c) b2/2, sign = sign(c).
struct IdealRep {
  BigInt norm;
  BigInt b;
  int sign = 1;
};

IdealRep to_ideal(const QForm& f);
QForm from_ideal(const IdealRep& ideal, const BigInt& n);

// Product of two invertible ideals: I1 I2 = content * result.
struct IdealProduct {
  IdealRep ideal;
  BigInt content;
};
IdealProduct multiply(const IdealRep& lhs, const IdealRep& rhs, const BigInt& n);

// A cycle form with its distance from f_0 and an accumulated error budget.
struct FormWithDistance {
  QForm form;
  HighPrecReal dist;
  HighPrecReal err;
};

struct ComposeOptions {
  // err grows by err_log_factor * ln N per composition.
  double err_log_factor = 4.0;
};

// Gauss composition followed by reduction onto the principal cycle. The
// distance is the sum of the input distances corrected by the exact step
// lengths taken during reduction. Throws DiscriminantMismatch.
FormWithDistance compose(const FormWithDistance& f, const FormWithDistance& g,
                         const ComposeOptions& options = {}, std::size_t* reduction_steps = nullptr);

// 2^k . f by iterated self-composition.
FormWithDistance doubling(const FormWithDistance& f, unsigned k = 1, const ComposeOptions& options = {});

FormWithDistance step_forward(const FormWithDistance& f);
FormWithDistance step_backward(const FormWithDistance& f);

// f_0 = [a0^2 - N, 2 a0, 1] at distance 0; it stands for the identity.
FormWithDistance principal_form(const BigInt& n, Precision prec);

// f_m with d(f_m, f_0) from a short expansion of sqrt N.
FormWithDistance cycle_form(const BigInt& n, std::size_t m, Precision prec);

}  // namespace surd
