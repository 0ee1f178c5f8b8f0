#pragma once

#include <vector>

#include "surd/cf.hpp"

namespace surd::testing {

// Terms m = 0 .. count-1 of the expansion of sqrt N.
struct PeriodTable {
  PeriodSummary summary;
  std::vector<SqrtExpansion::Term> terms;
};

inline PeriodTable period_table(const BigInt& n, std::size_t count, ConvergentMode mode) {
  PeriodTable t;
  t.summary = expand_period(n);
  SqrtExpansion walk(n, mode);
  t.terms.push_back(walk.term());
  while (t.terms.size() < count) {
    walk.advance();
    t.terms.push_back(walk.term());
  }
  return t;
}

// Two full periods, enough for every index used by the period identities.
inline PeriodTable two_periods(const BigInt& n, ConvergentMode mode = ConvergentMode::exact) {
  const std::size_t tau = expand_period(n).tau;
  return period_table(n, 2 * tau + 1, mode);
}

}  // namespace surd::testing
