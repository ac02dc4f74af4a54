#pragma once

#include <string>
#include <utility>
#include <vector>

#include "logcoef/catalog.hpp"

namespace logcoef {

enum class ClassKind { kS, kU, kM, kG };

/// One of S, U(lambda) with 0 < lambda <= 1, M(alpha) with alpha >= 0, or
/// G(alpha) with 0 < alpha <= 1. Use the factories; they enforce the ranges.
class ClassSpec {
 public:
  static ClassSpec S();
  static ClassSpec U(double lambda);
  static ClassSpec M(double alpha);
  static ClassSpec G(double alpha);

  ClassKind kind() const noexcept { return kind_; }
  // lambda for U, alpha for M and G, 0 for S.
  double parameter() const noexcept { return param_; }
  double lambda() const;
  double alpha() const;

  /// "S", "U", "M" or "G".
  std::string letter() const;
  /// e.g. "U(lambda=0.5)".
  std::string name() const;

  bool operator==(const ClassSpec&) const = default;

 private:
  ClassSpec(ClassKind kind, double param) : kind_(kind), param_(param) {}
  ClassKind kind_;
  double param_;
};

/// Pointwise margin of the defining inequality; positive iff it holds at z:
///   U(lambda): lambda - |(z/f)^2 f' - 1|
///   M(alpha):  Re[(1 - alpha) z f'/f + alpha (1 + z f''/f')]
///   G(alpha):  (1 + alpha/2) - Re[1 + z f''/f']
/// z = 0 returns the limit value. S has no pointwise test (kUnsupported).
/// f or f' vanishing at z raises kSingularSample. Without a closed form the
/// series is used, but only inside series_trust_radius (kUntrustedRadius).
double membership_margin(const AnalyticFunction& f, const ClassSpec& spec, cplx z);

inline constexpr double kSeriesTailTolerance = 1e-9;

/// Largest radius at which the truncation tail of f'' is estimated below
/// kSeriesTailTolerance, from the last eight coefficients:
///   max_k |a_k| k^2 r^k / (1 - r).
double series_trust_radius(const TruncatedSeries& s);

struct MembershipReport {
  ClassSpec spec;
  std::vector<double> radii;
  int angular = 0;
  std::vector<double> radius_worst;  // worst margin per radius
  double worst_margin = 0.0;
  cplx witness;                      // grid point attaining worst_margin
  std::vector<cplx> singular;        // skipped samples
  bool pass = false;
};

/// Samples membership_margin on z = r e^{2 pi i k / angular}. Ties in the
/// worst margin go to the first point in (radius index, angle index) order.
/// Any singular sample forces pass = false. `parallel` splits the grid
/// across hardware threads; the report is identical either way.
MembershipReport membership_test(const AnalyticFunction& f, const ClassSpec& spec,
                                 const std::vector<double>& radii, int angular, bool parallel = false);

/// Second-order Schwarz coefficients: |c1| <= 1, |c2| <= 1 - |c1|^2.
class SchwarzPoint {
 public:
  // Rejects points outside the body by more than 1e-12.
  SchwarzPoint(cplx c1, cplx c2);
  cplx c1() const noexcept { return c1_; }
  cplx c2() const noexcept { return c2_; }

 private:
  cplx c1_;
  cplx c2_;
};

struct CoeffPair {
  cplx a2;
  cplx a3;
};

// a2 = -2 c1/(1 + alpha), a3 = [((alpha^2 + 8 alpha + 3)/4) a2^2 - c2]/(1 + 2 alpha).
CoeffPair m_schwarz_map(const SchwarzPoint& p, double alpha);

// a2 = (alpha/2) c1, a3 = (alpha/6) c2 - (2 (1 - alpha)/(3 alpha)) a2^2.
CoeffPair g_schwarz_map(const SchwarzPoint& p, double alpha);

/// RHS - LHS of
///   |a3 - (alpha^2 + 8 alpha + 3)/(4 (1 + 2 alpha)) a2^2|
///     <= 1/(1 + 2 alpha) - (1 + alpha)^2/(4 (1 + 2 alpha)) |a2|^2.
double eq10_slack(cplx a2, cplx a3, double alpha);

/// RHS - LHS of |a3 + (2 (1 - alpha)/(3 alpha)) a2^2| <= (alpha^2 - 4|a2|^2)/(6 alpha).
double e11_slack(cplx a2, cplx a3, double alpha);

/// (lambda - |a3 - a2^2|, (1 + lambda) - |a2|).
std::pair<double, double> u_aux_check(const AnalyticFunction& f, double lambda);

// alpha/(n (n - 1)) - |a_n|.
double coeff_bound_A_check(const AnalyticFunction& f, double alpha, int n);

}  // namespace logcoef
