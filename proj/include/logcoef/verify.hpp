#pragma once

#include <string>
#include <vector>

#include "logcoef/bounds.hpp"
#include "logcoef/classes.hpp"

namespace logcoef {

// Order used for series-only entries when sampling up to |z| = 0.99.
inline constexpr int kMembershipSeriesOrder = 6144;

inline const std::vector<double> kDefaultRadii = {0.5, 0.9, 0.99};
inline constexpr int kDefaultAngular = 256;

/// A catalog function together with the class it is claimed to belong to
/// (or, for negative controls, not to belong to).
struct ClassAssertion {
  FunctionSpec function;
  ClassSpec spec;
  bool expect_member = true;
};

/// Every named catalog function paired with its class, plus the control
/// "Koebe is not in G(1)".
std::vector<ClassAssertion> catalog_class_assertions();

struct AssertionOutcome {
  ClassAssertion assertion;
  MembershipReport membership;
  double delta = 0.0;
  BoundPair bound;
  bool delta_in_bound = true;  // members only
  bool ok = false;
};

struct WitnessOutcome {
  ClassSpec spec;
  std::string side;  // "lower" or "upper"
  FunctionSpec witness;
  double bound = 0.0;
  double delta = 0.0;
  bool ok = false;
};

struct VerifyReport {
  std::vector<AssertionOutcome> assertions;
  std::vector<WitnessOutcome> witnesses;
  bool ok = false;
};

AssertionOutcome check_assertion(const ClassAssertion& a, const std::vector<double>& radii, int angular,
                                 bool parallel = false);

/// Membership and bound containment for every catalog assertion, then
/// delta(witness) == bound for every sharp side over a parameter mesh.
VerifyReport verify_all(const std::vector<double>& radii = kDefaultRadii, int angular = kDefaultAngular,
                        bool parallel = false);

}  // namespace logcoef
