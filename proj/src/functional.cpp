#include "logcoef/functional.hpp"

#include <string>

namespace logcoef {

std::vector<cplx> log_coefficients(const AnalyticFunction& f, int n) {
  const int available = f.series.order() - 1;
  if (n < 0 || n > available) {
    throw Error(ErrorCode::kOrderTooLow,
                "requested " + std::to_string(n) + " coefficients, series supports " + std::to_string(available));
  }
  const TruncatedSeries log = log_unit(f.series.quotient_by_z());
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) out[static_cast<std::size_t>(k - 1)] = 0.5 * log[k];
  return out;
}

LogPair gamma_from_a(cplx a2, cplx a3) {
  const cplx g1 = 0.5 * a2;
  const cplx g2 = 0.5 * (a3 - 0.5 * a2 * a2);
  return LogPair{g1, g2, std::abs(g2) - std::abs(g1)};
}

LogPair log_pair(const AnalyticFunction& f) {
  if (f.series.order() < 3) throw Error(ErrorCode::kOrderTooLow, "delta needs order >= 3");
  const auto g = log_coefficients(f, 2);
  return LogPair{g[0], g[1], std::abs(g[1]) - std::abs(g[0])};
}

double delta(const AnalyticFunction& f) { return log_pair(f).delta; }

}  // namespace logcoef
