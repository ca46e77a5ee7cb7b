#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twistvol/tube.hpp"

namespace twistvol {

/// One ordering comparison. With (t1, eps1) <= (t2, eps2) componentwise,
/// phi = f_2 - f_1 should satisfy phi >= 0 and phi' <= 0 on [r0_2, 0].
struct MonotonicityCase {
  std::string kind;  // "eps" or "t"
  double t1 = 0, t2 = 0, eps1 = 0, eps2 = 0, l1 = 0;
  double r_lo = 0;  // r0 of the larger parameter, the longer interval
  double min_phi = 0, max_phip = 0;
  double m1 = 0, m2 = 0;
  std::size_t samples = 0, strict_samples = 0;
  bool strict_ok = false;
  bool cone_angle_ok = false;  // m1 > m2
  bool ok = false;
};

MonotonicityCase monotonicity_eps(double t, double eps1, double eps2, double l1, const TubeOptions& opts = {});
MonotonicityCase monotonicity_t(double t1, double t2, double eps, double l1, const TubeOptions& opts = {});

struct MonotonicityReport {
  std::vector<MonotonicityCase> cases;
  bool ok() const;
};

/// The eps-ordering at t1 and t2, and the t-ordering at eps1 and eps2.
MonotonicityReport monotonicity_suite(double t1, double t2, double eps1, double eps2, double l1,
                                      const TubeOptions& opts = {});

/// Randomized check of the differential-inequality theorem: phi'' = k phi + s
/// with piecewise-constant 0 <= k <= 1, s >= 0, phi(0) >= 0, phi'(0) = 0,
/// integrated both ways. The one-sided lemma runs on [0,1] with psi'(0) >= 0.
struct InequalityHarness {
  int trials = 0;
  int theorem_failures = 0;
  int lemma_failures = 0;
  double worst_phi = 0;          // min phi over all trials
  double worst_phip_right = 0;   // min phi' on x >= 0
  double worst_phip_left = 0;    // max phi' on x <= 0
  double tol = 0;
  bool ok() const { return trials > 0 && theorem_failures == 0 && lemma_failures == 0; }
};

InequalityHarness differential_inequality_harness(int trials, std::uint64_t seed, double tol = 1e-9);

struct RegularityStep {
  int index = 0;
  double t = 0, eps = 0;
  double c1 = 0, c2 = 0, r0 = 0;
  double sup_f = 0, sup_fp = 0, sup_g = 0;  // on [r0(t_lim, 0), 0], relative to l1 and l2
};

struct RegularityReport {
  double t_lim = 0;
  double r0_lim = 0;
  std::vector<RegularityStep> steps;
  bool c1_positive = false;
  bool c2_negative = false;
  bool eps_decreasing = false;
  bool sup_decreasing = false;  // past the third step
  bool r0_converging = false;
  bool ok() const { return c1_positive && c2_negative && eps_decreasing && sup_decreasing && r0_converging; }
};

/// Distances of f, f', g at (t_i, eps_i) to the eps = 0 closed forms at t_lim.
/// g is compared as g / l2, so l2 does not enter.
RegularityReport regularity_suite(double t_lim, const std::vector<std::pair<double, double>>& sequence, double l1,
                                  const TubeOptions& opts = {});
/// The sequence t_i = h(l1)(1 - 2^-i), eps_i = eps(t_i), i = 1..n.
RegularityReport regularity_sequence(double l1, int n, const TubeOptions& opts = {});

struct PropertyPoint {
  double t = 0, eps = 0, l1 = 0;
  double c2 = 0, r0 = 0;
  ProfileCheck profile;
  MonotonicityCase eps_case, t_case;
  bool ok() const;
};

struct PropertyRun {
  std::vector<PropertyPoint> points;
  InequalityHarness harness;
  bool c2_negative = false;
  bool r0_below = false;  // r0 < min(-eps/2, -1)
  bool ok() const;
};

/// Seeded random (t, eps, l1) points; each is integrated, checked, and
/// compared against a perturbed point in eps and in t. Points run in parallel.
PropertyRun random_property_suite(int points, std::uint64_t seed, const TubeOptions& opts = {});

}  // namespace twistvol
