#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logcoef/series.hpp"

namespace logcoef {

/// Values of f, f' and f'' at one point. `value` is empty for entries whose
/// closed form only covers the derivatives (f itself is then series-only).
struct Jet {
  std::optional<cplx> value;
  cplx first;
  cplx second;
};

using PointEvaluator = std::function<Jet(cplx)>;

struct Param {
  std::string name;
  double value;
};

/// A named normalized function: truncated series plus, where one exists, a
/// closed-form point evaluator.
struct AnalyticFunction {
  NormalizedSeries series;
  std::optional<PointEvaluator> evaluator;
  std::string label;
  std::vector<Param> params;

  std::optional<double> param(std::string_view name) const;
  /// e.g. "f4(lambda=0.5)".
  std::string display_name() const;
};

/// Label plus parameters; resolves to an AnalyticFunction through make().
struct FunctionSpec {
  std::string label;
  std::optional<double> lambda = std::nullopt;
  std::optional<double> alpha = std::nullopt;
  double theta = 0.0;

  std::string display_name() const;
  bool operator==(const FunctionSpec&) const = default;
};

// z/(1 - e^{i theta} z)^2.
AnalyticFunction koebe(double theta, int order = kDefaultOrder);
// z/(1 - sqrt(2) e^{i theta} z + e^{2 i theta} z^2).
AnalyticFunction f1(double theta, int order = kDefaultOrder);
// z/(1 + e^{i theta} z^2).
AnalyticFunction f2(double theta, int order = kDefaultOrder);
// z/(1 - lambda e^{i theta} z^2), 0 < lambda <= 1.
AnalyticFunction f3(double lambda, double theta, int order = kDefaultOrder);
// z/(1 - sqrt(2 lambda) z + lambda z^2), 1/2 <= lambda <= 1.
AnalyticFunction f4(double lambda, int order = kDefaultOrder);
// z/(1 - z + lambda z^2), 0 < lambda <= 1/2.
AnalyticFunction f5(double lambda, int order = kDefaultOrder);

/// Alpha-convex analogue of the rotated Koebe function,
///   ( (1/alpha) int_0^z t^{1/alpha - 1} (1 - e^{i theta} t)^{-2/alpha} dt )^alpha.
///
/// Built entirely from series: with (1 - e^{i theta} t)^{-2/alpha} = sum b_k t^k
/// the factor z^{1/alpha} comes out of the integral and the function is
/// z (sum_k b_k z^k / (1 + alpha k))^alpha. The point evaluator integrates the
/// same representation numerically (tanh-sinh) instead of summing the series,
/// which loses accuracy near the unit circle. alpha = 0 returns koebe(theta).
AnalyticFunction k_theta_alpha(double theta, double alpha, int order = kDefaultOrder);

/// Same construction with (1 - t^2)^{-1/alpha}; z + z^3/(1 + 2 alpha) + ...
/// Point evaluation by quadrature as above; alpha = 0 returns z/(1 - z^2) with
/// its closed form.
AnalyticFunction m_alpha_upper(double alpha, int order = kDefaultOrder);

// f'(z) = (1 - z^2)^{alpha/2}, 0 < alpha <= 1. Closed form covers f' and f''.
AnalyticFunction g_alpha_upper(double alpha, int order = kDefaultOrder);

// z - z^2/2.
AnalyticFunction g_quadratic(int order = kDefaultOrder);

// f(z) = z.
AnalyticFunction identity_function(int order = kDefaultOrder);

/// e^{-i theta} f(e^{i theta} z); multiplies a_n by e^{i (n-1) theta}.
AnalyticFunction rotate(const AnalyticFunction& f, double theta);

/// Resolve a label ("koebe", "f1".."f5", "k_theta_alpha", "m_alpha_upper",
/// "g_alpha_upper", "g_quadratic", "identity"). Missing required parameters
/// and unknown labels raise kUnknownLabel / kParameterRange.
AnalyticFunction make(const FunctionSpec& spec, int order = kDefaultOrder);

const std::vector<std::string>& known_labels();
/// Labels whose construction takes lambda or alpha.
bool takes_lambda(std::string_view label);
bool takes_alpha(std::string_view label);

struct PoleCheck {
  bool outside = true;        // every root has modulus > 1
  double min_modulus = 0.0;   // +inf when there are no roots
};

/// Roots of p_0 + p_1 z + p_2 z^2 (degree <= 2). Real quadratics with a
/// negative discriminant use |z_1 z_2| = |p_0/p_2|; the rest use the
/// cancellation-free quadratic formula.
PoleCheck poles_outside_disk(std::span<const cplx> p);

}  // namespace logcoef
