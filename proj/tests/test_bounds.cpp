#include <doctest.h>

#include <cmath>
#include <vector>

#include "logcoef/bounds.hpp"
#include "logcoef/catalog.hpp"
#include "logcoef/functional.hpp"

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

std::vector<ClassSpec> spec_grid() {
  std::vector<ClassSpec> out{ClassSpec::S()};
  for (double x : {0.05, 0.25, 0.5, 0.75, 1.0}) {
    out.push_back(ClassSpec::U(x));
    out.push_back(ClassSpec::G(x));
  }
  for (double a : {0.0, 0.5, 1.0, kMBreakpoint, 2.0, 5.0, 20.0}) out.push_back(ClassSpec::M(a));
  return out;
}

}  // namespace

TEST_CASE("breakpoint constant") { CHECK(kMBreakpoint == doctest::Approx((1 + std::sqrt(3.0)) / 2).epsilon(1e-16)); }

TEST_CASE("bound_delta examples") {
  const BoundPair s = bound_delta(ClassSpec::S());
  CHECK(s.lower == doctest::Approx(-std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(s.upper == 0.5);
  CHECK((s.lower_sharp && s.upper_sharp));

  const BoundPair u = bound_delta(ClassSpec::U(0.5));
  CHECK(u.lower == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(u.upper == doctest::Approx(0.25).epsilon(1e-15));
  CHECK((u.lower_sharp && u.upper_sharp));

  const BoundPair m1 = bound_delta(ClassSpec::M(1.0));
  CHECK(m1.lower == doctest::Approx(-1 / std::sqrt(10.0)).epsilon(1e-15));
  CHECK(m1.upper == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(m1.upper_sharp);
  CHECK_FALSE(m1.lower_sharp);

  const BoundPair m0 = bound_delta(ClassSpec::M(0.0));
  CHECK(m0.lower == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m0.upper == doctest::Approx(0.5).epsilon(1e-15));

  const BoundPair g = bound_delta(ClassSpec::G(1.0));
  CHECK(g.lower == doctest::Approx(-4.0 / 21).epsilon(1e-15));
  CHECK(g.upper == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK(g.upper_sharp);
  CHECK_FALSE(g.lower_sharp);
  CHECK_FALSE(g.lower_witness);
  CHECK(g.note.find("3/16") != std::string::npos);

  const BoundPair mb = bound_delta(ClassSpec::M(kMBreakpoint));
  CHECK(std::abs(mb.lower - (std::sqrt(3.0) - 2)) < 1e-12);
}

TEST_CASE("branch continuity") {
  CHECK(std::abs(u_lower_small(0.5) + 0.5) < 1e-15);
  CHECK(std::abs(u_lower_large(0.5) + 0.5) < 1e-15);
  CHECK(std::abs(m_lower_inner(kMBreakpoint) - (std::sqrt(3.0) - 2)) < 1e-12);
  CHECK(std::abs(m_lower_outer(kMBreakpoint) - (std::sqrt(3.0) - 2)) < 1e-12);
  // the bound is continuous just across the breakpoints
  CHECK(std::abs(bound_delta(ClassSpec::U(0.5 - 1e-9)).lower - bound_delta(ClassSpec::U(0.5 + 1e-9)).lower) < 1e-8);
  CHECK(std::abs(bound_delta(ClassSpec::M(kMBreakpoint - 1e-9)).lower -
                 bound_delta(ClassSpec::M(kMBreakpoint + 1e-9)).lower) < 1e-8);
}

TEST_CASE("branch selection follows the stated ranges") {
  for (double lam : {0.1, 0.3, 0.5}) CHECK(bound_delta(ClassSpec::U(lam)).lower == doctest::Approx(-(2 * lam + 1) / 4));
  for (double lam : {0.6, 0.9, 1.0}) CHECK(bound_delta(ClassSpec::U(lam)).lower == doctest::Approx(-std::sqrt(2 * lam) / 2));
  for (double a : {0.0, 0.7, 1.3}) CHECK(bound_delta(ClassSpec::M(a)).lower == doctest::Approx(m_lower_inner(a)));
  for (double a : {1.4, 3.0, 50.0}) CHECK(bound_delta(ClassSpec::M(a)).lower == doctest::Approx(m_lower_outer(a)));
  for (double a : {0.1, 0.5, 1.0}) {
    CHECK(bound_delta(ClassSpec::G(a)).lower == doctest::Approx(-a * (17 - a) / (12 * (8 - a))));
    CHECK(bound_delta(ClassSpec::G(a)).upper == doctest::Approx(a / 12));
  }
}

TEST_CASE("monotonicity") {
  double prev_u = -1, prev_g = -1, prev_m = 1;
  for (int i = 1; i <= 100; ++i) {
    const double x = i / 100.0;
    const double u = bound_delta(ClassSpec::U(x)).upper, g = bound_delta(ClassSpec::G(x)).upper;
    const double m = bound_delta(ClassSpec::M(5.0 * x)).upper;
    CHECK(u > prev_u);
    CHECK(g > prev_g);
    CHECK(m < prev_m);
    prev_u = u, prev_g = g, prev_m = m;
  }
}

TEST_CASE("lower <= upper and witnesses realize sharp bounds") {
  for (const auto& spec : spec_grid()) {
    CAPTURE(spec.name());
    const BoundPair b = bound_delta(spec);
    CHECK(b.lower <= b.upper);
    CHECK(b.lower_sharp == static_cast<bool>(b.lower_witness));
    CHECK(b.upper_sharp == static_cast<bool>(b.upper_witness));
    if (b.upper_witness) CHECK(std::abs(delta(make(*b.upper_witness)) - b.upper) < 1e-10);
    if (b.lower_witness) CHECK(std::abs(delta(make(*b.lower_witness)) - b.lower) < 1e-10);
  }
  CHECK(bound_delta(ClassSpec::U(0.3)).lower_witness->label == "f5");
  CHECK(bound_delta(ClassSpec::U(0.8)).lower_witness->label == "f4");
  CHECK(bound_delta(ClassSpec::U(0.8)).upper_witness->label == "f3");
}

TEST_CASE("nesting: M(0) matches S, U(1) matches S on the lower side") {
  const BoundPair s = bound_delta(ClassSpec::S()), m0 = bound_delta(ClassSpec::M(0.0));
  CHECK(std::abs(s.lower - m0.lower) < 1e-15);
  CHECK(std::abs(s.upper - m0.upper) < 1e-15);
  CHECK(std::abs(bound_delta(ClassSpec::U(1.0)).lower - s.lower) < 1e-15);
}

TEST_CASE("m_lower_minimizer") {
  CHECK(m_lower_minimizer(kMBreakpoint) == doctest::Approx(2 * (2 - std::sqrt(3.0))).epsilon(1e-14));
  const double a = kMBreakpoint;
  CHECK(m_lower_minimizer(a) == doctest::Approx(std::sqrt(2 / (a * a + 3 * a + 1))).epsilon(1e-14));
  CHECK(m_lower_minimizer(2.0) == doctest::Approx(5.0 / 11).epsilon(1e-15));
  CHECK(m_lower_minimizer(10.0) == doctest::Approx(21.0 / 131).epsilon(1e-15));
  check_error(ErrorCode::kParameterRange, [] { m_lower_minimizer(1.0); });
}

TEST_CASE("g_lower_minimizer") {
  CHECK(g_lower_minimizer(1.0) == doctest::Approx(3.0 / 7).epsilon(1e-15));
  CHECK(g_lower_minimizer(0.5) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(g_lower_minimizer(1e-8) / 1e-8 == doctest::Approx(3.0 / 8).epsilon(1e-8));
  for (int i = 1; i <= 100; ++i) CHECK(g_lower_minimizer(i / 100.0) < i / 200.0);
  // t_0 minimizes ((8 - a) t^2 - 6 a t - a^2)/(12 a), whose value there is the lower bound
  const double t = g_lower_minimizer(0.6);
  CHECK(((8 - 0.6) * t * t - 6 * 0.6 * t - 0.36) / (12 * 0.6) == doctest::Approx(bound_delta(ClassSpec::G(0.6)).lower));
  check_error(ErrorCode::kParameterRange, [] { g_lower_minimizer(0.0); });
  check_error(ErrorCode::kParameterRange, [] { g_lower_minimizer(1.5); });
}
