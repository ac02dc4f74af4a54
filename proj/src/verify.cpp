#include "logcoef/verify.hpp"

#include <cmath>

#include "logcoef/functional.hpp"
#include "logcoef/search.hpp"

namespace logcoef {

namespace {

// Closed-form witnesses match to rounding; series-built ones (order 64)
// to the series tolerance.
constexpr double kWitnessTolerance = 1e-6;

}  // namespace

std::vector<ClassAssertion> catalog_class_assertions() {
  std::vector<ClassAssertion> out;
  out.push_back({{"koebe"}, ClassSpec::M(0.0)});
  out.push_back({{"f1"}, ClassSpec::U(1.0)});
  out.push_back({{"f2"}, ClassSpec::U(1.0)});
  for (double l : {0.1, 0.5, 1.0}) out.push_back({{"f3", l}, ClassSpec::U(l)});
  for (double l : {0.5, 0.75, 1.0}) out.push_back({{"f4", l}, ClassSpec::U(l)});
  for (double l : {0.1, 0.25, 0.5}) out.push_back({{"f5", l}, ClassSpec::U(l)});
  for (double a : {0.5, 1.0, 2.0, 5.0}) out.push_back({{"k_theta_alpha", std::nullopt, a}, ClassSpec::M(a)});
  for (double a : {0.0, 0.5, 1.0, 2.0}) out.push_back({{"m_alpha_upper", std::nullopt, a}, ClassSpec::M(a)});
  for (double a : {0.25, 0.5, 1.0}) out.push_back({{"g_alpha_upper", std::nullopt, a}, ClassSpec::G(a)});
  out.push_back({{"g_quadratic"}, ClassSpec::G(1.0)});
  out.push_back({{"koebe"}, ClassSpec::G(1.0), false});
  return out;
}

AssertionOutcome check_assertion(const ClassAssertion& a, const std::vector<double>& radii, int angular,
                                 bool parallel) {
  AnalyticFunction f = make(a.function, 64);
  if (!f.evaluator) f = make(a.function, kMembershipSeriesOrder);
  AssertionOutcome out{a, membership_test(f, a.spec, radii, angular, parallel), delta(f), bound_delta(a.spec)};
  if (a.expect_member) {
    out.delta_in_bound = out.delta >= out.bound.lower - kViolationTolerance &&
                         out.delta <= out.bound.upper + kViolationTolerance;
    out.ok = out.membership.pass && out.delta_in_bound;
  } else {
    out.ok = !out.membership.pass;
  }
  return out;
}

VerifyReport verify_all(const std::vector<double>& radii, int angular, bool parallel) {
  VerifyReport rep;
  rep.ok = true;
  for (const auto& a : catalog_class_assertions()) {
    rep.assertions.push_back(check_assertion(a, radii, angular, parallel));
    rep.ok = rep.ok && rep.assertions.back().ok;
  }
  std::vector<ClassSpec> mesh{ClassSpec::S()};
  for (double l : {0.1, 0.25, 0.5, 0.75, 1.0}) mesh.push_back(ClassSpec::U(l));
  for (double a : {0.0, 0.5, 1.0, kMBreakpoint, 2.0, 5.0}) mesh.push_back(ClassSpec::M(a));
  for (double a : {0.25, 0.5, 0.75, 1.0}) mesh.push_back(ClassSpec::G(a));
  for (const auto& spec : mesh) {
    const BoundPair b = bound_delta(spec);
    auto check = [&](const char* side, const std::optional<FunctionSpec>& w, double bound, bool sharp) {
      if (!sharp || !w) return;
      const double d = delta(make(*w, 64));
      const bool ok = std::abs(d - bound) <= kWitnessTolerance;
      rep.witnesses.push_back({spec, side, *w, bound, d, ok});
      rep.ok = rep.ok && ok;
    };
    check("lower", b.lower_witness, b.lower, b.lower_sharp);
    check("upper", b.upper_witness, b.upper, b.upper_sharp);
  }
  return rep;
}

}  // namespace logcoef
