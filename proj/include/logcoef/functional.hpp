#pragma once

#include <vector>

#include "logcoef/catalog.hpp"

namespace logcoef {

/// Initial logarithmic coefficients and the functional |gamma_2| - |gamma_1|.
struct LogPair {
  cplx gamma1;
  cplx gamma2;
  double delta;
};

/// gamma_1..gamma_n from log(f(z)/z) = 2 sum gamma_k z^k. Requires
/// n <= order - 1.
std::vector<cplx> log_coefficients(const AnalyticFunction& f, int n);

/// gamma_1 = a_2/2, gamma_2 = (a_3 - a_2^2/2)/2.
LogPair gamma_from_a(cplx a2, cplx a3);

// Through the series logarithm (the primary path).
LogPair log_pair(const AnalyticFunction& f);

double delta(const AnalyticFunction& f);

}  // namespace logcoef
