#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logcoef/classes.hpp"
#include "logcoef/functional.hpp"

namespace logcoef {

/// A point of a coefficient-relaxation body after rotation reduction.
///
/// U(lambda) (and S, searched through the U(1) body):
///   a2 = modulus, a3 = a2^2 + radial e^{i phase}, modulus <= 1 + lambda, radial <= lambda.
/// M(alpha), G(alpha): c1 = modulus, c2 = radial e^{i phase},
///   modulus <= 1, radial <= 1 - modulus^2, mapped by m_schwarz_map / g_schwarz_map.
struct BodyPoint {
  double modulus = 0.0;
  double radial = 0.0;
  double phase = 0.0;
};

/// (a2, a3) for a body point of the given class.
CoeffPair body_coefficients(const ClassSpec& spec, const BodyPoint& p);

/// |gamma_2| - |gamma_1| at a body point.
double body_delta(const ClassSpec& spec, const BodyPoint& p);

struct SearchResult {
  ClassSpec spec;
  double min_delta = 0.0;
  double max_delta = 0.0;
  BodyPoint argmin;
  BodyPoint argmax;
  int resolution = 0;   // modulus and radial axes carry resolution + 1 points
  int phase_count = 0;  // phases 2 pi k / phase_count
  bool refined = false;
};

/// Grid search of delta over the relaxation body, followed by three passes of
/// local refinement (halved step, 3x3x3 stencil) around each extreme.
/// Among grid points within 1e-12 of an extreme the smallest lexicographic
/// (modulus, radial, phase) index is reported. phase_count = 0 uses
/// `resolution`. Results do not depend on `parallel`.
SearchResult body_search(const ClassSpec& spec, int resolution, int phase_count = 0, bool refine = true,
                         bool parallel = false);

struct SweepRow {
  double param = 0.0;
  double delta_max = 0.0;  // over the theta grid
  double delta_min = 0.0;
};

/// delta of a catalog family over a parameter grid, each member rotated over
/// theta_grid. Families without lambda/alpha ignore `param` beyond echoing it.
std::vector<SweepRow> family_sweep(const std::string& label, const std::vector<double>& param_grid,
                                   const std::vector<double>& theta_grid, int order = kDefaultOrder);

inline constexpr double kViolationTolerance = 1e-9;

struct ScanResult {
  ClassSpec spec;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::int64_t violations = 0;
  double min_delta = 0.0;
  double max_delta = 0.0;
  double bound_lower = 0.0;
  double bound_upper = 0.0;
};

/// Draws `samples` points of the full (unreduced) body from a seeded
/// mt19937_64 stream and counts deltas outside
/// [lower - kViolationTolerance, upper + kViolationTolerance].
/// A quarter of the draws sit on the outer boundary of the radial coordinate.
ScanResult bound_violation_scan(const ClassSpec& spec, std::int64_t samples, std::uint64_t seed);

}  // namespace logcoef
