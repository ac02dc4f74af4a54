#include "logcoef/classes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

namespace logcoef {

namespace {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Everything membership needs at a point, whichever way it is computed.
class JetSource {
 public:
  JetSource(const AnalyticFunction& f, const ClassSpec& spec)
      : f_(f),
        needs_value_(spec.kind() != ClassKind::kG),
        use_series_(!f.evaluator),
        df_(differentiate(f.series.inner())),
        d2f_(differentiate(df_)) {
    if (use_series_ || needs_value_) trust_radius_ = series_trust_radius(f.series.inner());
  }

  // Largest radius this source can serve without refusing.
  double max_radius() const {
    const bool series_needed = use_series_ || (needs_value_ && !value_from_evaluator());
    return series_needed ? trust_radius_ : std::numeric_limits<double>::infinity();
  }

  Jet at(cplx z) const {
    if (std::abs(z) > max_radius()) {
      throw Error(ErrorCode::kUntrustedRadius,
                  "|z|=" + format_number(std::abs(z)) + " beyond series trust radius " +
                      format_number(max_radius()) + " for " + f_.display_name() + " at order " +
                      std::to_string(f_.series.order()));
    }
    if (use_series_) {
      return Jet{evaluate(f_.series.inner(), z), evaluate(df_, z), evaluate(d2f_, z)};
    }
    Jet j = (*f_.evaluator)(z);
    if (needs_value_ && !j.value) j.value = evaluate(f_.series.inner(), z);
    return j;
  }

 private:
  bool value_from_evaluator() const {
    // Probe once; evaluators either always or never provide the value.
    return f_.evaluator && (*f_.evaluator)(cplx{}).value.has_value();
  }

  const AnalyticFunction& f_;
  bool needs_value_;
  bool use_series_;
  TruncatedSeries df_;
  TruncatedSeries d2f_;
  double trust_radius_ = std::numeric_limits<double>::infinity();
};

bool finite(cplx w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); }

double margin_from_jet(const ClassSpec& spec, cplx z, const Jet& j) {
  if (z == cplx{}) {
    switch (spec.kind()) {
      case ClassKind::kU: return spec.lambda();
      case ClassKind::kM: return 1.0;
      case ClassKind::kG: return spec.alpha() / 2.0;
      case ClassKind::kS: break;
    }
  }
  if (!finite(j.first) || !finite(j.second) || j.first == cplx{}) {
    throw Error(ErrorCode::kSingularSample, "f' vanishes or is not finite");
  }
  const bool needs_value = spec.kind() != ClassKind::kG;
  if (needs_value && (!j.value || !finite(*j.value) || *j.value == cplx{})) {
    throw Error(ErrorCode::kSingularSample, "f vanishes or is not finite");
  }
  switch (spec.kind()) {
    case ClassKind::kU: {
      const cplx q = z / *j.value;
      return spec.lambda() - std::abs(q * q * j.first - 1.0);
    }
    case ClassKind::kM: {
      const double a = spec.alpha();
      const cplx star = z * j.first / *j.value;
      const cplx conv = 1.0 + z * j.second / j.first;
      return ((1.0 - a) * star + a * conv).real();
    }
    case ClassKind::kG:
      return 1.0 + spec.alpha() / 2.0 - (1.0 + z * j.second / j.first).real();
    case ClassKind::kS: break;
  }
  throw Error(ErrorCode::kUnsupported, "class S has no pointwise membership test");
}

}  // namespace

ClassSpec ClassSpec::S() { return ClassSpec(ClassKind::kS, 0.0); }

ClassSpec ClassSpec::U(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kParameterRange, "U requires 0 < lambda <= 1, got " + format_number(lambda));
  }
  return ClassSpec(ClassKind::kU, lambda);
}

ClassSpec ClassSpec::M(double alpha) {
  if (!(alpha >= 0.0 && std::isfinite(alpha))) {
    throw Error(ErrorCode::kParameterRange, "M requires alpha >= 0, got " + format_number(alpha));
  }
  return ClassSpec(ClassKind::kM, alpha);
}

ClassSpec ClassSpec::G(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kParameterRange, "G requires 0 < alpha <= 1, got " + format_number(alpha));
  }
  return ClassSpec(ClassKind::kG, alpha);
}

double ClassSpec::lambda() const {
  if (kind_ != ClassKind::kU) throw Error(ErrorCode::kUnsupported, name() + " has no lambda");
  return param_;
}

double ClassSpec::alpha() const {
  if (kind_ != ClassKind::kM && kind_ != ClassKind::kG) {
    throw Error(ErrorCode::kUnsupported, name() + " has no alpha");
  }
  return param_;
}

std::string ClassSpec::letter() const {
  switch (kind_) {
    case ClassKind::kS: return "S";
    case ClassKind::kU: return "U";
    case ClassKind::kM: return "M";
    case ClassKind::kG: return "G";
  }
  return "?";
}

std::string ClassSpec::name() const {
  switch (kind_) {
    case ClassKind::kS: return "S";
    case ClassKind::kU: return "U(lambda=" + format_number(param_) + ")";
    case ClassKind::kM: return "M(alpha=" + format_number(param_) + ")";
    case ClassKind::kG: return "G(alpha=" + format_number(param_) + ")";
  }
  return "?";
}

double series_trust_radius(const TruncatedSeries& s) {
  const int n = s.order();
  auto tail = [&](double r) {
    double worst = 0.0;
    for (int k = std::max(0, n - 7); k <= n; ++k) {
      const double kk = static_cast<double>(k);
      worst = std::max(worst, std::abs(s[k]) * kk * kk * std::pow(r, kk));
    }
    return worst / (1.0 - r);
  };
  if (tail(0.999999) <= kSeriesTailTolerance) return 1.0;
  double lo = 0.0, hi = 0.999999;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) <= kSeriesTailTolerance ? lo : hi) = mid;
  }
  return lo;
}

double membership_margin(const AnalyticFunction& f, const ClassSpec& spec, cplx z) {
  if (spec.kind() == ClassKind::kS) {
    throw Error(ErrorCode::kUnsupported, "class S has no pointwise membership test");
  }
  return margin_from_jet(spec, z, JetSource(f, spec).at(z));
}

MembershipReport membership_test(const AnalyticFunction& f, const ClassSpec& spec,
                                 const std::vector<double>& radii, int angular, bool parallel) {
  if (spec.kind() == ClassKind::kS) {
    throw Error(ErrorCode::kUnsupported, "class S has no pointwise membership test");
  }
  if (radii.empty() || angular < 1) throw Error(ErrorCode::kParameterRange, "empty sampling grid");
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::kParameterRange, "radius " + format_number(r) + " not in (0,1)");
  }
  const JetSource source(f, spec);
  const double r_max = *std::max_element(radii.begin(), radii.end());
  if (r_max > source.max_radius()) source.at(std::polar(r_max, 0.0));  // throws kUntrustedRadius

  const std::size_t per_radius = static_cast<std::size_t>(angular);
  const std::size_t total = radii.size() * per_radius;
  std::vector<double> margins(total);
  std::vector<char> singular(total, 0);
  auto point = [&](std::size_t idx) {
    const double r = radii[idx / per_radius];
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(idx % per_radius) / angular;
    return std::polar(r, phi);
  };
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const cplx z = point(i);
      try {
        margins[i] = margin_from_jet(spec, z, source.at(z));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kSingularSample) throw;
        singular[i] = 1;
      }
    }
  };
  const unsigned workers = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  if (workers == 1) {
    work(0, total);
  } else {
    const std::size_t chunk = (total + workers - 1) / workers;
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        if (b >= total) break;
        pool.emplace_back([&, w, b] {
          try {
            work(b, std::min(total, b + chunk));
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : failures) {
      if (e) std::rethrow_exception(e);
    }
  }

  MembershipReport rep{spec, radii, angular, std::vector<double>(radii.size(), std::numeric_limits<double>::infinity()),
                       std::numeric_limits<double>::infinity(), cplx{}, {}, false};
  for (std::size_t i = 0; i < total; ++i) {
    if (singular[i]) {
      rep.singular.push_back(point(i));
      continue;
    }
    double& rw = rep.radius_worst[i / per_radius];
    rw = std::min(rw, margins[i]);
    if (margins[i] < rep.worst_margin) {
      rep.worst_margin = margins[i];
      rep.witness = point(i);
    }
  }
  rep.pass = rep.singular.empty() && rep.worst_margin > 0.0;
  return rep;
}

SchwarzPoint::SchwarzPoint(cplx c1, cplx c2) : c1_(c1), c2_(c2) {
  constexpr double tol = 1e-12;
  const double r1 = std::abs(c1);
  if (!(r1 <= 1.0 + tol) || !(std::abs(c2) <= 1.0 - r1 * r1 + tol)) {
    throw Error(ErrorCode::kParameterRange, "(c1, c2) outside |c1| <= 1, |c2| <= 1 - |c1|^2");
  }
}

CoeffPair m_schwarz_map(const SchwarzPoint& p, double alpha) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::kParameterRange, "alpha must be >= 0");
  const cplx a2 = -2.0 * p.c1() / (1.0 + alpha);
  const double k = (alpha * alpha + 8.0 * alpha + 3.0) / 4.0;
  const cplx a3 = (k * a2 * a2 - p.c2()) / (1.0 + 2.0 * alpha);
  return {a2, a3};
}

CoeffPair g_schwarz_map(const SchwarzPoint& p, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::kParameterRange, "alpha must be in (0, 1]");
  const cplx a2 = 0.5 * alpha * p.c1();
  const cplx a3 = alpha / 6.0 * p.c2() - 2.0 * (1.0 - alpha) / (3.0 * alpha) * a2 * a2;
  return {a2, a3};
}

double eq10_slack(cplx a2, cplx a3, double alpha) {
  const double d = 1.0 + 2.0 * alpha;
  const double k = (alpha * alpha + 8.0 * alpha + 3.0) / (4.0 * d);
  const double rhs = 1.0 / d - (1.0 + alpha) * (1.0 + alpha) / (4.0 * d) * std::norm(a2);
  return rhs - std::abs(a3 - k * a2 * a2);
}

double e11_slack(cplx a2, cplx a3, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::kParameterRange, "alpha must be in (0, 1]");
  const double rhs = (alpha * alpha - 4.0 * std::norm(a2)) / (6.0 * alpha);
  return rhs - std::abs(a3 + 2.0 * (1.0 - alpha) / (3.0 * alpha) * a2 * a2);
}

std::pair<double, double> u_aux_check(const AnalyticFunction& f, double lambda) {
  const cplx a2 = f.series.a(2), a3 = f.series.a(3);
  return {lambda - std::abs(a3 - a2 * a2), 1.0 + lambda - std::abs(a2)};
}

double coeff_bound_A_check(const AnalyticFunction& f, double alpha, int n) {
  if (n < 2 || n > f.series.order()) {
    throw Error(ErrorCode::kOrderTooLow, "coefficient index " + std::to_string(n) + " outside [2, order]");
  }
  return alpha / (static_cast<double>(n) * (n - 1)) - std::abs(f.series.a(n));
}

}  // namespace logcoef
