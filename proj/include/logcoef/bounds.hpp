#pragma once

#include <optional>
#include <string>

#include "logcoef/catalog.hpp"
#include "logcoef/classes.hpp"

namespace logcoef {

/// Sharp (or best known) interval for |gamma_2| - |gamma_1| over a class.
/// Witnesses name catalog functions whose delta attains the bound.
struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_sharp = false;
  bool upper_sharp = false;
  std::optional<FunctionSpec> lower_witness;
  std::optional<FunctionSpec> upper_witness;
  std::string note;
};

// Where the two lower-bound formulas of M(alpha) meet: (1 + sqrt 3)/2.
inline constexpr double kMBreakpoint = 1.3660254037844386;

// U(lambda) lower branches: 0 < lambda <= 1/2 and 1/2 <= lambda <= 1.
double u_lower_small(double lambda);  // -(2 lambda + 1)/4
double u_lower_large(double lambda);  // -sqrt(2 lambda)/2

// M(alpha) lower branches on either side of kMBreakpoint.
double m_lower_inner(double alpha);  // -1/sqrt(2 (alpha^2 + 3 alpha + 1))
double m_lower_outer(double alpha);  // -(6a^2 + 10a + 3)/(4 (2a + 1)(a^2 + 3a + 1))

/// Bound interval per class. At a branch point both formulas are evaluated
/// and must agree to 1e-12.
BoundPair bound_delta(const ClassSpec& spec);

/// Minimizing |a_2| of the M(alpha) lower estimate, (1 + 2 alpha)/(alpha^2 + 3 alpha + 1).
/// Requires alpha >= kMBreakpoint.
double m_lower_minimizer(double alpha);

/// t_0 = 3 alpha/(8 - alpha), the minimizer of
///   phi(t) = ((8 - alpha) t^2 - 6 alpha t - alpha^2)/(12 alpha)  on [0, alpha/2].
double g_lower_minimizer(double alpha);

}  // namespace logcoef
