#include "logcoef/bounds.hpp"

#include <cmath>
#include <numbers>

namespace logcoef {

namespace {

constexpr double kBranchTolerance = 1e-12;
constexpr double kBreakpointWindow = 1e-12;

double agreeing(double a, double b, const char* where) {
  if (std::abs(a - b) > kBranchTolerance) {
    throw Error(ErrorCode::kUnsupported, std::string("branch formulas disagree at ") + where);
  }
  return a;
}

}  // namespace

double u_lower_small(double lambda) { return -(2.0 * lambda + 1.0) / 4.0; }

double u_lower_large(double lambda) { return -std::sqrt(2.0 * lambda) / 2.0; }

double m_lower_inner(double alpha) { return -1.0 / std::sqrt(2.0 * (alpha * alpha + 3.0 * alpha + 1.0)); }

double m_lower_outer(double alpha) {
  const double q = alpha * alpha + 3.0 * alpha + 1.0;
  return -(6.0 * alpha * alpha + 10.0 * alpha + 3.0) / (4.0 * (2.0 * alpha + 1.0) * q);
}

BoundPair bound_delta(const ClassSpec& spec) {
  BoundPair b;
  switch (spec.kind()) {
    case ClassKind::kS:
      b.lower = -std::numbers::sqrt2 / 2.0;
      b.upper = 0.5;
      b.lower_sharp = b.upper_sharp = true;
      b.lower_witness = FunctionSpec{"f1"};
      b.upper_witness = FunctionSpec{"f2"};
      b.note = "|gamma_2| <= 1/2 + 1/e on S (reference only)";
      return b;
    case ClassKind::kU: {
      const double l = spec.lambda();
      b.upper = l / 2.0;
      b.upper_sharp = b.lower_sharp = true;
      b.upper_witness = FunctionSpec{"f3", l};
      if (std::abs(l - 0.5) <= kBreakpointWindow) {
        b.lower = agreeing(u_lower_small(l), u_lower_large(l), "lambda = 1/2");
        b.lower_witness = FunctionSpec{"f4", 0.5};
      } else if (l < 0.5) {
        b.lower = u_lower_small(l);
        b.lower_witness = FunctionSpec{"f5", l};
      } else {
        b.lower = u_lower_large(l);
        b.lower_witness = FunctionSpec{"f4", l};
      }
      return b;
    }
    case ClassKind::kM: {
      const double a = spec.alpha();
      b.upper = 1.0 / (2.0 * (1.0 + 2.0 * a));
      b.upper_sharp = true;
      b.upper_witness = FunctionSpec{"m_alpha_upper", std::nullopt, a};
      if (std::abs(a - kMBreakpoint) <= kBreakpointWindow) {
        b.lower = agreeing(m_lower_inner(a), m_lower_outer(a), "alpha = (1 + sqrt 3)/2");
      } else {
        b.lower = a < kMBreakpoint ? m_lower_inner(a) : m_lower_outer(a);
      }
      if (a == 0.0) b.note = "alpha = 0 is the starlike case; the lower bound matches S";
      return b;
    }
    case ClassKind::kG: {
      const double a = spec.alpha();
      b.lower = -a * (17.0 - a) / (12.0 * (8.0 - a));
      b.upper = a / 12.0;
      b.upper_sharp = true;
      b.upper_witness = FunctionSpec{"g_alpha_upper", std::nullopt, a};
      b.note = "lower bound not known to be sharp; for alpha = 1, z - z^2/2 gives -3/16 against -4/21";
      return b;
    }
  }
  throw Error(ErrorCode::kUnsupported, "unknown class");
}

double m_lower_minimizer(double alpha) {
  if (!(alpha >= kMBreakpoint - kBreakpointWindow) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kParameterRange, "minimizer defined for alpha >= (1 + sqrt 3)/2");
  }
  return (1.0 + 2.0 * alpha) / (alpha * alpha + 3.0 * alpha + 1.0);
}

double g_lower_minimizer(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::kParameterRange, "alpha must be in (0, 1]");
  const double t0 = 3.0 * alpha / (8.0 - alpha);
  if (!(t0 < alpha / 2.0)) throw Error(ErrorCode::kUnsupported, "t0 not interior to [0, alpha/2]");
  return t0;
}

}  // namespace logcoef
