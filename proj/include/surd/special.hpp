#pragma once

#include "surd/highprec.hpp"

namespace surd {

// Complementary error function, relative error below 2^(1-prec). Uses the
// Taylor series of erf for small arguments and the Laplace continued
// fraction beyond the switchover; negative x goes through erfc(-x) = 2 - erfc(x).
HighPrecReal erfc_hp(const HighPrecReal& x, Precision prec);

// Exponential integral E1(x) = int_x^inf e^-t / t dt for x > 0, relative error
// below 2^(1-prec). Throws DomainError for x <= 0.
HighPrecReal exp_int_e1(const HighPrecReal& x, Precision prec);

}  // namespace surd
