#include "logcoef/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "logcoef/bounds.hpp"

namespace logcoef {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTieTolerance = 1e-12;

// S is searched through the U(1) body.
ClassSpec effective(const ClassSpec& spec) {
  return spec.kind() == ClassKind::kS ? ClassSpec::U(1.0) : spec;
}

double modulus_max(const ClassSpec& spec) {
  return spec.kind() == ClassKind::kU ? 1.0 + spec.lambda() : 1.0;
}

double radial_max(const ClassSpec& spec, double modulus) {
  if (spec.kind() == ClassKind::kU) return spec.lambda();
  return std::max(0.0, 1.0 - modulus * modulus);
}

// Unit-cube coordinates (fractions of the modulus and radial ranges, phase)
// to body coordinates.
BodyPoint from_unit(const ClassSpec& spec, double fu, double fv, double phase) {
  const double m = fu * modulus_max(spec);
  return BodyPoint{m, fv * radial_max(spec, m), phase};
}

// With a2 real, a3 - a2^2/2 = A + B e^{i phase} for real A, B, so on a grid
// row of fixed (modulus, radial) delta = |A + B e^{i phase}|/2 - |a2|/2 only
// needs cos(phase).
struct RowTerms {
  double a;
  double b;
  double half_abs_a2;
};

RowTerms row_terms(const ClassSpec& spec, double modulus, double radial) {
  switch (spec.kind()) {
    case ClassKind::kU: return {0.5 * modulus * modulus, radial, 0.5 * modulus};
    case ClassKind::kM: {
      const double al = spec.alpha();
      const double a2 = -2.0 * modulus / (1.0 + al);
      const double k = (al * al + 8.0 * al + 3.0) / 4.0;
      return {k * a2 * a2 / (1.0 + 2.0 * al) - 0.5 * a2 * a2, -radial / (1.0 + 2.0 * al), 0.5 * std::abs(a2)};
    }
    case ClassKind::kG: {
      const double al = spec.alpha();
      const double a2 = 0.5 * al * modulus;
      const double kappa = 2.0 * (1.0 - al) / (3.0 * al);
      return {-(kappa + 0.5) * a2 * a2, al / 6.0 * radial, 0.5 * std::abs(a2)};
    }
    case ClassKind::kS: break;
  }
  throw Error(ErrorCode::kUnsupported, "no body for " + spec.name());
}

struct Extreme {
  double value;
  std::array<double, 3> at;  // unit-cube coordinates
};

template <typename Better>
Extreme refine(const ClassSpec& spec, Extreme e, std::array<double, 3> step, Better better) {
  for (int pass = 0; pass < 3; ++pass) {
    for (auto& h : step) h *= 0.5;
    const auto center = e.at;
    for (int i = -1; i <= 1; ++i) {
      for (int j = -1; j <= 1; ++j) {
        for (int k = -1; k <= 1; ++k) {
          const double fu = std::clamp(center[0] + i * step[0], 0.0, 1.0);
          const double fv = std::clamp(center[1] + j * step[1], 0.0, 1.0);
          const double ph = center[2] + k * step[2];
          const double v = body_delta(spec, from_unit(spec, fu, fv, ph));
          if (better(v, e.value)) e = Extreme{v, {fu, fv, ph}};
        }
      }
    }
  }
  return e;
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

CoeffPair body_coefficients(const ClassSpec& spec_in, const BodyPoint& p) {
  const ClassSpec spec = effective(spec_in);
  switch (spec.kind()) {
    case ClassKind::kU: {
      const cplx a2 = p.modulus;
      return {a2, a2 * a2 + std::polar(p.radial, p.phase)};
    }
    case ClassKind::kM: return m_schwarz_map(SchwarzPoint(p.modulus, std::polar(p.radial, p.phase)), spec.alpha());
    case ClassKind::kG: return g_schwarz_map(SchwarzPoint(p.modulus, std::polar(p.radial, p.phase)), spec.alpha());
    case ClassKind::kS: break;
  }
  throw Error(ErrorCode::kUnsupported, "no body for " + spec.name());
}

double body_delta(const ClassSpec& spec, const BodyPoint& p) {
  const CoeffPair c = body_coefficients(spec, p);
  return gamma_from_a(c.a2, c.a3).delta;
}

SearchResult body_search(const ClassSpec& spec_in, int resolution, int phase_count, bool refine_extremes,
                         bool parallel) {
  if (resolution < 16) throw Error(ErrorCode::kParameterRange, "resolution must be >= 16");
  if (phase_count == 0) phase_count = resolution;
  if (phase_count < 1) throw Error(ErrorCode::kParameterRange, "phase_count must be positive");
  const ClassSpec spec = effective(spec_in);
  const int nu = resolution + 1, nv = resolution + 1, np = phase_count;
  const double du = 1.0 / resolution, dv = 1.0 / resolution, dp = kTwoPi / np;

  auto value_at = [&](int i, int j, int k) { return body_delta(spec, from_unit(spec, i * du, j * dv, k * dp)); };
  std::vector<double> cosines(static_cast<std::size_t>(np));
  for (int k = 0; k < np; ++k) cosines[static_cast<std::size_t>(k)] = std::cos(k * dp);
  auto row_value = [&](const RowTerms& t, int k) {
    const double sq = t.a * t.a + t.b * t.b + 2.0 * t.a * t.b * cosines[static_cast<std::size_t>(k)];
    return 0.5 * std::sqrt(std::max(0.0, sq)) - t.half_abs_a2;
  };
  auto row_at = [&](int i, int j) {
    const BodyPoint p = from_unit(spec, i * du, j * dv, 0.0);
    return row_terms(spec, p.modulus, p.radial);
  };

  // Pass 1: extremes. Pass 2: first lexicographic index within tolerance.
  struct Span {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    long first_lo = -1, first_hi = -1;
  };
  auto scan_rows = [&](int i0, int i1, Span& s) {
    for (int i = i0; i < i1; ++i)
      for (int j = 0; j < nv; ++j) {
        const RowTerms t = row_at(i, j);
        for (int k = 0; k < np; ++k) {
          const double v = row_value(t, k);
          s.lo = std::min(s.lo, v);
          s.hi = std::max(s.hi, v);
        }
      }
  };
  auto locate_rows = [&](int i0, int i1, double lo, double hi, Span& s) {
    for (int i = i0; i < i1 && (s.first_lo < 0 || s.first_hi < 0); ++i)
      for (int j = 0; j < nv; ++j) {
        const RowTerms t = row_at(i, j);
        for (int k = 0; k < np; ++k) {
          const double v = row_value(t, k);
          const long idx = (static_cast<long>(i) * nv + j) * np + k;
          if (s.first_lo < 0 && v <= lo + kTieTolerance) s.first_lo = idx;
          if (s.first_hi < 0 && v >= hi - kTieTolerance) s.first_hi = idx;
        }
      }
  };

  const unsigned workers = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  std::vector<Span> spans(workers);
  const int rows = (nu + static_cast<int>(workers) - 1) / static_cast<int>(workers);
  auto run = [&](auto&& body) {
    if (workers == 1) {
      body(0, 0, nu);
      return;
    }
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        const int i0 = static_cast<int>(w) * rows;
        const int i1 = std::min(nu, i0 + rows);
        if (i0 >= i1) break;
        pool.emplace_back([&, w, i0, i1] {
          try {
            body(w, i0, i1);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : failures)
      if (e) std::rethrow_exception(e);
  };

  run([&](unsigned w, int i0, int i1) { scan_rows(i0, i1, spans[w]); });
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : spans) {
    lo = std::min(lo, s.lo);
    hi = std::max(hi, s.hi);
  }
  run([&](unsigned w, int i0, int i1) { locate_rows(i0, i1, lo, hi, spans[w]); });
  long first_lo = -1, first_hi = -1;
  for (const auto& s : spans) {
    if (first_lo < 0) first_lo = s.first_lo;
    if (first_hi < 0) first_hi = s.first_hi;
  }

  auto unit_of = [&](long idx) {
    const long k = idx % np, j = (idx / np) % nv, i = idx / (static_cast<long>(np) * nv);
    return std::array<double, 3>{i * du, j * dv, k * dp};
  };
  Extreme mn{value_at(static_cast<int>(first_lo / (static_cast<long>(np) * nv)),
                      static_cast<int>((first_lo / np) % nv), static_cast<int>(first_lo % np)),
             unit_of(first_lo)};
  Extreme mx{value_at(static_cast<int>(first_hi / (static_cast<long>(np) * nv)),
                      static_cast<int>((first_hi / np) % nv), static_cast<int>(first_hi % np)),
             unit_of(first_hi)};
  if (refine_extremes) {
    const std::array<double, 3> step{du, dv, dp};
    mn = refine(spec, mn, step, [](double a, double b) { return a < b; });
    mx = refine(spec, mx, step, [](double a, double b) { return a > b; });
  }

  SearchResult out{spec_in, 0.0, 0.0, {}, {}, resolution, phase_count, refine_extremes};
  out.argmin = from_unit(spec, mn.at[0], mn.at[1], mn.at[2]);
  out.argmax = from_unit(spec, mx.at[0], mx.at[1], mx.at[2]);
  out.min_delta = body_delta(spec, out.argmin);
  out.max_delta = body_delta(spec, out.argmax);
  return out;
}

std::vector<SweepRow> family_sweep(const std::string& label, const std::vector<double>& param_grid,
                                   const std::vector<double>& theta_grid, int order) {
  const auto& labels = known_labels();
  if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
    throw Error(ErrorCode::kUnknownLabel, "'" + label + "'");
  }
  if (theta_grid.empty()) throw Error(ErrorCode::kParameterRange, "empty theta grid");
  std::vector<SweepRow> rows;
  rows.reserve(param_grid.size());
  for (double p : param_grid) {
    FunctionSpec fs{label};
    if (takes_lambda(label)) fs.lambda = p;
    if (takes_alpha(label)) fs.alpha = p;
    const AnalyticFunction base = make(fs, order);
    SweepRow row{p, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (double th : theta_grid) {
      const double d = delta(th == 0.0 ? base : rotate(base, th));
      row.delta_max = std::max(row.delta_max, d);
      row.delta_min = std::min(row.delta_min, d);
    }
    rows.push_back(row);
  }
  return rows;
}

ScanResult bound_violation_scan(const ClassSpec& spec, std::int64_t samples, std::uint64_t seed) {
  if (samples < 0) throw Error(ErrorCode::kParameterRange, "negative sample count");
  const BoundPair bounds = bound_delta(spec);
  const ClassSpec body = effective(spec);
  std::mt19937_64 rng(seed);
  ScanResult out{spec, samples, seed, 0, std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity(), bounds.lower, bounds.upper};
  for (std::int64_t n = 0; n < samples; ++n) {
    const double u1 = unit_draw(rng), u2 = unit_draw(rng), u3 = unit_draw(rng);
    const double psi = kTwoPi * unit_draw(rng), phi = kTwoPi * unit_draw(rng);
    const double modulus = u1 * modulus_max(body);
    const double radial = (u3 < 0.25 ? 1.0 : u2) * radial_max(body, modulus);
    const cplx first = std::polar(modulus, psi);
    const cplx second = std::polar(radial, phi);
    CoeffPair c;
    switch (body.kind()) {
      case ClassKind::kU: c = {first, first * first + second}; break;
      case ClassKind::kM: c = m_schwarz_map(SchwarzPoint(first, second), body.alpha()); break;
      case ClassKind::kG: c = g_schwarz_map(SchwarzPoint(first, second), body.alpha()); break;
      case ClassKind::kS: throw Error(ErrorCode::kUnsupported, "no body for S");
    }
    const double d = gamma_from_a(c.a2, c.a3).delta;
    out.min_delta = std::min(out.min_delta, d);
    out.max_delta = std::max(out.max_delta, d);
    if (d < bounds.lower - kViolationTolerance || d > bounds.upper + kViolationTolerance) ++out.violations;
  }
  return out;
}

}  // namespace logcoef
