#include "logcoef/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace logcoef {

namespace {

cplx unit(double theta) { return std::polar(1.0, theta); }

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw Error(ErrorCode::kParameterRange, std::string(name) + " must be finite");
}

void require_in(double x, double lo, double hi, bool lo_open, const char* name) {
  require_finite(x, name);
  const bool ok = (lo_open ? x > lo : x >= lo) && x <= hi;
  if (!ok) {
    throw Error(ErrorCode::kParameterRange, std::string(name) + "=" + format_number(x) + " outside " +
                                                (lo_open ? "(" : "[") + format_number(lo) + ", " +
                                                format_number(hi) + "]");
  }
}

// f(z) = z / (1 + b z + c z^2). With P the denominator, P - zP' = 1 - c z^2,
// which gives the derivatives below.
AnalyticFunction quadratic_denominator(cplx b, cplx c, int order, std::string label,
                                       std::vector<Param> params) {
  const TruncatedSeries denom(order, {1.0, b, c});
  TruncatedSeries series = div(TruncatedSeries::z(order), denom);
  PointEvaluator eval = [b, c](cplx z) {
    const cplx p = 1.0 + z * (b + c * z);
    const cplx dp = b + 2.0 * c * z;
    const cplx num = 1.0 - c * z * z;
    const cplx dnum = -2.0 * c * z;
    return Jet{z / p, num / (p * p), (dnum * p - 2.0 * num * dp) / (p * p * p)};
  };
  return AnalyticFunction{NormalizedSeries(std::move(series)), std::move(eval), std::move(label),
                          std::move(params)};
}

// z * (sum_k b_k z^k / (1 + alpha k))^alpha where b is the expansion of the
// integrand's non-power factor.
TruncatedSeries alpha_integral_pipeline(const TruncatedSeries& integrand, double alpha) {
  TruncatedSeries inner = integrand;
  for (int k = 0; k <= inner.order(); ++k) inner[k] /= 1.0 + alpha * k;
  return shift_up(pow_real(inner, alpha));
}

// Point evaluator for f = z S(z)^alpha with
//   S(z) = int_0^1 h(z v^alpha) dv,
// the integral form of the same construction after v = t^{1/alpha}. h, h', h''
// are the non-power factor of the integrand and its derivatives. Only ratios
// of S, S', S'' enter f'/f and f''/f', so the branch of S^alpha is irrelevant
// to class margins.
struct Integrand {
  std::function<cplx(cplx)> h, dh, d2h;
};

PointEvaluator alpha_integral_evaluator(Integrand g, double alpha) {
  return [g = std::move(g), alpha](cplx z) {
    thread_local boost::math::quadrature::tanh_sinh<double> quad;
    constexpr double tol = 1e-13;
    auto integrate = [&](auto&& fn) { return quad.integrate(fn, 0.0, 1.0, tol); };
    const cplx s0 = integrate([&](double v) { return g.h(z * std::pow(v, alpha)); });
    const cplx s1 = integrate([&](double v) {
      const double va = std::pow(v, alpha);
      return va * g.dh(z * va);
    });
    const cplx s2 = integrate([&](double v) {
      const double va = std::pow(v, alpha);
      return va * va * g.d2h(z * va);
    });
    const cplx q = z * s1 / s0;  // z S'/S
    const cplx dq = s1 / s0 + z * s2 / s0 - z * (s1 / s0) * (s1 / s0);
    const cplx pow_s = std::exp(alpha * std::log(s0));
    const cplx first = pow_s * (1.0 + alpha * q);
    const cplx ratio = alpha * s1 / s0 + alpha * dq / (1.0 + alpha * q);  // f''/f'
    return Jet{z * pow_s, first, first * ratio};
  };
}

}  // namespace

std::optional<double> AnalyticFunction::param(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return p.value;
  }
  return std::nullopt;
}

std::string AnalyticFunction::display_name() const {
  std::string out = label;
  if (params.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i].name + "=" + format_number(params[i].value);
  }
  return out + ')';
}

std::string FunctionSpec::display_name() const {
  std::string out = label + "(";
  bool first = true;
  auto add = [&](const char* name, double v) {
    if (!first) out += ", ";
    out += std::string(name) + "=" + format_number(v);
    first = false;
  };
  if (lambda) add("lambda", *lambda);
  if (alpha) add("alpha", *alpha);
  if (theta != 0.0) add("theta", theta);
  return first ? label : out + ")";
}

AnalyticFunction koebe(double theta, int order) {
  require_finite(theta, "theta");
  const cplx w = unit(theta);
  return quadratic_denominator(-2.0 * w, w * w, order, "koebe", {{"theta", theta}});
}

AnalyticFunction f1(double theta, int order) {
  require_finite(theta, "theta");
  const cplx w = unit(theta);
  return quadratic_denominator(-std::numbers::sqrt2 * w, w * w, order, "f1", {{"theta", theta}});
}

AnalyticFunction f2(double theta, int order) {
  require_finite(theta, "theta");
  return quadratic_denominator(0.0, unit(theta), order, "f2", {{"theta", theta}});
}

AnalyticFunction f3(double lambda, double theta, int order) {
  require_in(lambda, 0.0, 1.0, true, "lambda");
  require_finite(theta, "theta");
  return quadratic_denominator(0.0, -lambda * unit(theta), order, "f3",
                               {{"lambda", lambda}, {"theta", theta}});
}

AnalyticFunction f4(double lambda, int order) {
  require_in(lambda, 0.5, 1.0, false, "lambda");
  return quadratic_denominator(-std::sqrt(2.0 * lambda), lambda, order, "f4", {{"lambda", lambda}});
}

AnalyticFunction f5(double lambda, int order) {
  require_in(lambda, 0.0, 0.5, true, "lambda");
  return quadratic_denominator(-1.0, lambda, order, "f5", {{"lambda", lambda}});
}

AnalyticFunction k_theta_alpha(double theta, double alpha, int order) {
  require_finite(theta, "theta");
  require_in(alpha, 0.0, std::numeric_limits<double>::max(), false, "alpha");
  if (alpha == 0.0) {
    AnalyticFunction k = koebe(theta, order);
    k.label = "k_theta_alpha";
    k.params = {{"theta", theta}, {"alpha", 0.0}};
    return k;
  }
  const TruncatedSeries base(order, {1.0, -unit(theta)});
  TruncatedSeries series = alpha_integral_pipeline(pow_real(base, -2.0 / alpha), alpha);
  const cplx w = unit(theta);
  const double p = -2.0 / alpha;
  Integrand g{[=](cplx t) { return std::pow(1.0 - w * t, p); },
              [=](cplx t) { return -p * w * std::pow(1.0 - w * t, p - 1.0); },
              [=](cplx t) { return p * (p - 1.0) * w * w * std::pow(1.0 - w * t, p - 2.0); }};
  return AnalyticFunction{NormalizedSeries(std::move(series)), alpha_integral_evaluator(std::move(g), alpha),
                          "k_theta_alpha", {{"theta", theta}, {"alpha", alpha}}};
}

AnalyticFunction m_alpha_upper(double alpha, int order) {
  require_in(alpha, 0.0, std::numeric_limits<double>::max(), false, "alpha");
  if (alpha == 0.0) {
    return quadratic_denominator(0.0, -1.0, order, "m_alpha_upper", {{"alpha", 0.0}});
  }
  const TruncatedSeries base(order, {1.0, 0.0, -1.0});
  TruncatedSeries series = alpha_integral_pipeline(pow_real(base, -1.0 / alpha), alpha);
  // h(t) = (1 - t^2)^p
  const double p = -1.0 / alpha;
  Integrand g{[=](cplx t) { return std::pow(1.0 - t * t, p); },
              [=](cplx t) { return -2.0 * p * t * std::pow(1.0 - t * t, p - 1.0); },
              [=](cplx t) {
                const cplx u = 1.0 - t * t;
                return -2.0 * p * std::pow(u, p - 1.0) + 4.0 * p * (p - 1.0) * t * t * std::pow(u, p - 2.0);
              }};
  return AnalyticFunction{NormalizedSeries(std::move(series)), alpha_integral_evaluator(std::move(g), alpha),
                          "m_alpha_upper", {{"alpha", alpha}}};
}

AnalyticFunction g_alpha_upper(double alpha, int order) {
  require_in(alpha, 0.0, 1.0, true, "alpha");
  const TruncatedSeries base(order, {1.0, 0.0, -1.0});
  TruncatedSeries series = integrate_termwise(pow_real(base, alpha / 2.0));
  PointEvaluator eval = [alpha](cplx z) {
    const cplx w = 1.0 - z * z;
    return Jet{std::nullopt, std::pow(w, alpha / 2.0), -alpha * z * std::pow(w, alpha / 2.0 - 1.0)};
  };
  return AnalyticFunction{NormalizedSeries(std::move(series)), std::move(eval), "g_alpha_upper",
                          {{"alpha", alpha}}};
}

AnalyticFunction g_quadratic(int order) {
  PointEvaluator eval = [](cplx z) { return Jet{z - 0.5 * z * z, 1.0 - z, -1.0}; };
  return AnalyticFunction{NormalizedSeries(TruncatedSeries(order, {0.0, 1.0, -0.5})), std::move(eval),
                          "g_quadratic", {}};
}

AnalyticFunction identity_function(int order) {
  PointEvaluator eval = [](cplx z) { return Jet{z, 1.0, 0.0}; };
  return AnalyticFunction{NormalizedSeries(TruncatedSeries::z(order)), std::move(eval), "identity", {}};
}

AnalyticFunction rotate(const AnalyticFunction& f, double theta) {
  require_finite(theta, "theta");
  TruncatedSeries s = f.series.inner();
  for (int n = 2; n <= s.order(); ++n) s[n] *= unit((n - 1) * theta);
  std::optional<PointEvaluator> eval;
  if (f.evaluator) {
    eval = [inner = *f.evaluator, theta](cplx z) {
      const cplx w = unit(theta);
      Jet j = inner(w * z);
      if (j.value) j.value = *j.value / w;
      return Jet{j.value, j.first, j.second * w};
    };
  }
  AnalyticFunction out{NormalizedSeries(std::move(s)), std::move(eval), f.label, f.params};
  out.params.push_back({"rotation", theta});
  return out;
}

const std::vector<std::string>& known_labels() {
  static const std::vector<std::string> labels = {
      "koebe", "f1", "f2", "f3", "f4", "f5", "k_theta_alpha", "m_alpha_upper", "g_alpha_upper",
      "g_quadratic", "identity"};
  return labels;
}

bool takes_lambda(std::string_view label) { return label == "f3" || label == "f4" || label == "f5"; }

bool takes_alpha(std::string_view label) {
  return label == "k_theta_alpha" || label == "m_alpha_upper" || label == "g_alpha_upper";
}

AnalyticFunction make(const FunctionSpec& spec, int order) {
  const std::string& l = spec.label;
  auto need = [&](const std::optional<double>& v, const char* name) {
    if (!v) throw Error(ErrorCode::kParameterRange, l + " requires " + name);
    return *v;
  };
  if (l == "koebe") return koebe(spec.theta, order);
  if (l == "f1") return f1(spec.theta, order);
  if (l == "f2") return f2(spec.theta, order);
  if (l == "f3") return f3(need(spec.lambda, "lambda"), spec.theta, order);
  auto rotated = [&](AnalyticFunction f) { return spec.theta == 0.0 ? f : rotate(f, spec.theta); };
  if (l == "f4") return rotated(f4(need(spec.lambda, "lambda"), order));
  if (l == "f5") return rotated(f5(need(spec.lambda, "lambda"), order));
  if (l == "k_theta_alpha" || l == "kθα") return k_theta_alpha(spec.theta, need(spec.alpha, "alpha"), order);
  if (l == "m_alpha_upper") return rotated(m_alpha_upper(need(spec.alpha, "alpha"), order));
  if (l == "g_alpha_upper") return rotated(g_alpha_upper(need(spec.alpha, "alpha"), order));
  if (l == "g_quadratic") return rotated(g_quadratic(order));
  if (l == "identity") return identity_function(order);
  throw Error(ErrorCode::kUnknownLabel, "'" + l + "'");
}

PoleCheck poles_outside_disk(std::span<const cplx> p) {
  std::size_t deg = p.size();
  while (deg > 0 && p[deg - 1] == cplx{}) --deg;
  if (deg == 0) throw Error(ErrorCode::kZeroPolynomial, "all coefficients vanish");
  if (deg > 3) throw Error(ErrorCode::kUnsupported, "degree above 2");
  const double inf = std::numeric_limits<double>::infinity();
  double min_mod = inf;
  if (deg == 2) {
    min_mod = std::abs(p[0] / p[1]);
  } else if (deg == 3) {
    const cplx c0 = p[0], c1 = p[1], c2 = p[2];
    const bool real = c0.imag() == 0.0 && c1.imag() == 0.0 && c2.imag() == 0.0;
    const cplx disc = c1 * c1 - 4.0 * c2 * c0;
    if (real && disc.real() < 0.0) {
      min_mod = std::sqrt(std::abs(c0.real() / c2.real()));
    } else {
      cplx sq = std::sqrt(disc);
      // Pick the sign that avoids cancellation in -c1 -+ sqrt(disc).
      if (std::real(std::conj(c1) * sq) < 0.0) sq = -sq;
      const cplx q = -0.5 * (c1 + sq);
      if (q == cplx{}) {
        min_mod = 0.0;  // c1 = 0 and c0 = 0: double root at the origin
      } else {
        min_mod = std::min(std::abs(q / c2), std::abs(c0 / q));
      }
    }
  }
  return PoleCheck{min_mod > 1.0, min_mod};
}

}  // namespace logcoef
