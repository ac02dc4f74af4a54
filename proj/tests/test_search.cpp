#include <doctest.h>

#include <chrono>
#include <cmath>
#include <vector>

#include "logcoef/bounds.hpp"
#include "logcoef/catalog.hpp"
#include "logcoef/functional.hpp"
#include "logcoef/search.hpp"

using namespace logcoef;

namespace {

void check_error(ErrorCode code, auto&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

std::vector<double> grid(double from, double to, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(from + (to - from) * i / (n - 1));
  return out;
}

std::vector<ClassSpec> mesh() {
  std::vector<ClassSpec> out{ClassSpec::S()};
  for (double l : {0.1, 0.25, 0.5, 0.75, 1.0}) out.push_back(ClassSpec::U(l));
  for (double a : {0.0, 0.5, 1.0, kMBreakpoint, 2.0, 5.0}) out.push_back(ClassSpec::M(a));
  for (double a : {0.25, 0.5, 0.75, 1.0}) out.push_back(ClassSpec::G(a));
  return out;
}

}  // namespace

TEST_CASE("body_delta matches direct coefficient formulas") {
  // U body: a2 = x, a3 = x^2 + t e^{i phi}
  const double x = 0.7, t = 0.3, ph = 1.9;
  const cplx a3 = x * x + std::polar(t, ph);
  const double expect = std::abs(a3 - x * x / 2) / 2 - x / 2;
  CHECK(body_delta(ClassSpec::U(0.5), {x, t, ph}) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(body_delta(ClassSpec::S(), {x, t, ph}) == body_delta(ClassSpec::U(1.0), {x, t, ph}));

  // M body at alpha = 0, (c1, c2) = (-1, 0) is Koebe up to the sign flip c -> -c
  const CoeffPair k = body_coefficients(ClassSpec::M(0.0), {1.0, 0.0, 0.0});
  CHECK(std::abs(k.a2 + 2.0) < 1e-15);
  CHECK(std::abs(k.a3 - 3.0) < 1e-15);
  CHECK(body_delta(ClassSpec::M(0.0), {1.0, 0.0, 0.0}) == doctest::Approx(-0.5));

  // G body at alpha = 1, (0, e^{i pi}) gives z - z^3/6
  CHECK(body_delta(ClassSpec::G(1.0), {0.0, 1.0, M_PI}) == doctest::Approx(1.0 / 12).epsilon(1e-14));
}

TEST_CASE("body_search examples at resolution 200") {
  const SearchResult g = body_search(ClassSpec::G(1.0), 200);
  CHECK(std::abs(g.max_delta - 1.0 / 12) < 2e-3);
  CHECK(std::abs(g.min_delta + 4.0 / 21) < 2e-3);
  CHECK(g.refined);
  CHECK(g.phase_count == 200);

  const SearchResult m = body_search(ClassSpec::M(1.0), 200);
  CHECK(std::abs(m.max_delta - 1.0 / 6) < 2e-3);
  CHECK(std::abs(m.min_delta + 1 / std::sqrt(10.0)) < 2e-3);

  const SearchResult u = body_search(ClassSpec::U(0.25), 200);
  CHECK(std::abs(u.max_delta - 0.125) < 2e-3);
  CHECK(std::abs(u.min_delta + 0.375) < 2e-3);
}

TEST_CASE("body_search agrees with the closed forms across the mesh") {
  for (const auto& spec : mesh()) {
    CAPTURE(spec.name());
    const SearchResult r = body_search(spec, 200);
    const BoundPair b = bound_delta(spec);
    CHECK(std::abs(r.max_delta - b.upper) <= 2e-3);
    CHECK(std::abs(r.min_delta - b.lower) <= 2e-3);
    // the relaxation never escapes the bounds
    CHECK(r.max_delta <= b.upper + kViolationTolerance);
    CHECK(r.min_delta >= b.lower - kViolationTolerance);
    CHECK(r.min_delta <= r.max_delta);
    CHECK(std::abs(body_delta(spec, r.argmin) - r.min_delta) < 1e-12);
    CHECK(std::abs(body_delta(spec, r.argmax) - r.max_delta) < 1e-12);
  }
}

TEST_CASE("doubling the phase grid barely moves the extremes") {
  for (const auto& spec : {ClassSpec::U(0.6), ClassSpec::M(2.0), ClassSpec::G(0.5)}) {
    CAPTURE(spec.name());
    const SearchResult a = body_search(spec, 64, 64), b = body_search(spec, 64, 128);
    CHECK(std::abs(a.max_delta - b.max_delta) < 1e-4);
    CHECK(std::abs(a.min_delta - b.min_delta) < 1e-4);
  }
}

TEST_CASE("refinement improves on the raw grid") {
  const SearchResult raw = body_search(ClassSpec::M(1.0), 32, 0, false);
  const SearchResult ref = body_search(ClassSpec::M(1.0), 32, 0, true);
  CHECK_FALSE(raw.refined);
  CHECK(ref.max_delta >= raw.max_delta);
  CHECK(ref.min_delta <= raw.min_delta);
}

TEST_CASE("body_search is deterministic and independent of parallelism") {
  for (const auto& spec : {ClassSpec::U(0.3), ClassSpec::M(0.5), ClassSpec::G(1.0)}) {
    const SearchResult a = body_search(spec, 48, 0, true, false);
    const SearchResult b = body_search(spec, 48, 0, true, true);
    const SearchResult c = body_search(spec, 48, 0, true, false);
    for (const SearchResult* r : {&b, &c}) {
      CHECK(r->min_delta == a.min_delta);
      CHECK(r->max_delta == a.max_delta);
      CHECK(r->argmin.modulus == a.argmin.modulus);
      CHECK(r->argmin.radial == a.argmin.radial);
      CHECK(r->argmin.phase == a.argmin.phase);
      CHECK(r->argmax.modulus == a.argmax.modulus);
      CHECK(r->argmax.phase == a.argmax.phase);
    }
  }
}

TEST_CASE("body_search preconditions") {
  check_error(ErrorCode::kParameterRange, [] { body_search(ClassSpec::U(0.5), 15); });
}

TEST_CASE("family sweeps trace the sharp curves") {
  const std::vector<double> thetas = grid(0.0, 2 * M_PI, 9);
  const auto lam3 = grid(0.1, 1.0, 10);
  const auto rows3 = family_sweep("f3", lam3, thetas);
  REQUIRE(rows3.size() == lam3.size());
  for (const auto& r : rows3) {
    CHECK(std::abs(r.delta_max - r.param / 2) < 1e-12);
    CHECK(std::abs(r.delta_min - r.param / 2) < 1e-12);
  }
  for (const auto& r : family_sweep("f4", grid(0.5, 1.0, 6), thetas)) {
    CHECK(std::abs(r.delta_max + std::sqrt(2 * r.param) / 2) < 1e-12);
    CHECK(std::abs(r.delta_min + std::sqrt(2 * r.param) / 2) < 1e-12);
  }
  for (const auto& r : family_sweep("f5", grid(0.05, 0.5, 10), thetas)) {
    CHECK(std::abs(r.delta_max + (2 * r.param + 1) / 4) < 1e-12);
    CHECK(std::abs(r.delta_min + (2 * r.param + 1) / 4) < 1e-12);
  }
  for (const auto& r : family_sweep("m_alpha_upper", {0.0, 1.0, 3.0}, thetas)) {
    CHECK(std::abs(r.delta_max - 1 / (2 * (1 + 2 * r.param))) < 1e-12);
  }
  const auto koebe_rows = family_sweep("koebe", {0.0}, thetas);
  REQUIRE(koebe_rows.size() == 1);
  CHECK(std::abs(koebe_rows[0].delta_max + 0.5) < 1e-12);
  check_error(ErrorCode::kUnknownLabel, [&] { family_sweep("nope", {0.5}, thetas); });
}

TEST_CASE("violation scans") {
  const ScanResult m = bound_violation_scan(ClassSpec::M(0.5), 100000, 1);
  CHECK(m.violations == 0);
  CHECK(m.samples == 100000);
  const ScanResult g = bound_violation_scan(ClassSpec::G(0.3), 100000, 1);
  CHECK(g.violations == 0);
  const ScanResult u = bound_violation_scan(ClassSpec::U(1.0), 100000, 1);
  CHECK(u.violations == 0);
  CHECK(std::abs(u.max_delta - 0.5) < 1e-2);
  CHECK(u.bound_upper == 0.5);
  CHECK(bound_violation_scan(ClassSpec::S(), 20000, 3).violations == 0);
}

TEST_CASE("violation scans are reproducible per seed") {
  const ScanResult a = bound_violation_scan(ClassSpec::G(0.8), 5000, 17);
  const ScanResult b = bound_violation_scan(ClassSpec::G(0.8), 5000, 17);
  const ScanResult c = bound_violation_scan(ClassSpec::G(0.8), 5000, 18);
  CHECK(a.min_delta == b.min_delta);
  CHECK(a.max_delta == b.max_delta);
  CHECK(a.seed == 17);
  CHECK((a.min_delta != c.min_delta || a.max_delta != c.max_delta));
}

TEST_CASE("gap witness: g_quadratic sits strictly inside the G(1) interval") {
  const double d = delta(g_quadratic());
  const BoundPair b = bound_delta(ClassSpec::G(1.0));
  CHECK(std::abs(d + 3.0 / 16) < 1e-15);
  CHECK(d > b.lower);
  CHECK(d < b.upper);
  CHECK(d - b.lower < 5e-3);
}
