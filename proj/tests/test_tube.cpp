#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <utility>

#include "twistvol/bump.hpp"
#include "twistvol/errors.hpp"
#include "twistvol/tube.hpp"
#include "twistvol/tube_suites.hpp"
#include "twistvol/volbounds.hpp"

using namespace twistvol;

namespace {

const double kTau = 2 * M_PI;

struct Shot {
  double r0, m;
};

// f'' = k f from r = 0 backwards with a fixed small step until f changes sign,
// then linear interpolation of the crossing.
Shot shoot(double t, double eps, double l1, double hh = 2e-5) {
  double r = 0, f = l1, fp = l1;
  auto k = [&](double x) { return bump(t, eps, x); };
  for (;;) {
    const double a1 = fp, b1 = k(r) * f;
    const double a2 = fp - hh / 2 * b1, b2 = k(r - hh / 2) * (f - hh / 2 * a1);
    const double a3 = fp - hh / 2 * b2, b3 = k(r - hh / 2) * (f - hh / 2 * a2);
    const double a4 = fp - hh * b3, b4 = k(r - hh) * (f - hh * a3);
    const double fn = f - hh / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
    const double fpn = fp - hh / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
    if (fn <= 0) {
      const double s = f / (f - fn);
      return {r - s * hh, fp + s * (fpn - fp)};
    }
    f = fn, fp = fpn, r -= hh;
  }
}

}  // namespace

TEST_CASE("closed forms at eps = 0") {
  for (double t : {0.1, 0.4, 0.75, 0.95}) {
    const double s = std::sqrt(t), l1 = 9;
    for (double r : {-1.0, -0.5, -0.1})
      CHECK(f0_closed(t, l1, r).f == doctest::Approx(l1 * (std::cosh(s * r) + std::sinh(s * r) / s)));
    CHECK(f0_closed(t, l1, 0.5).f == doctest::Approx(l1 * std::exp(0.5)));
    CHECK(r0_closed(t) == doctest::Approx(-std::atanh(s) / s).epsilon(1e-14));
    CHECK(m_closed(t, l1) == doctest::Approx(l1 * std::sqrt(1 - t)).epsilon(1e-14));
    CHECK(r0_closed(t) < -1);
  }
  CHECK(m_closed(h(8), 8) == doctest::Approx(kTau).epsilon(1e-15));
}

TEST_CASE("shooting solution agrees with a fine fixed-step integration") {
  for (auto [t, eps] : {std::pair{0.3, 0.2}, {0.5, 0.9}, {0.85, 0.05}, {0.1, 1.5}, {0.6, 1e-3}}) {
    CAPTURE(t);
    CAPTURE(eps);
    const FSolution sol(t, eps, 8.0);
    const Shot ref = shoot(t, eps, 8.0);
    CHECK(sol.has_root());
    CHECK(sol.r0() == doctest::Approx(ref.r0).epsilon(1e-8));
    CHECK(sol.cone_angle() == doctest::Approx(ref.m).epsilon(1e-8));
    CHECK(sol.c1() > 0);
    CHECK(sol.c2() < 0);
    const TubeProfile p = integrate_f(t, eps, 8.0);
    CHECK(p.r0 == doctest::Approx(ref.r0).epsilon(1e-8));
    CHECK(p.m == doctest::Approx(ref.m).epsilon(1e-8));
  }
}

TEST_CASE("volume equals l1 l2 / 2") {
  for (auto [t, eps] : {std::pair{0.2, 0.0}, {0.2, 0.4}, {0.5, 1e-6}, {0.9, 1.1}, {0.05, 0.01}}) {
    CAPTURE(t);
    CAPTURE(eps);
    const TubeProfile p = integrate_tube(t, eps, 7.0, 3.0);
    CHECK(tube_volume(p) == doctest::Approx(10.5).epsilon(1e-9));
    CHECK(3.0 * FSolution(t, eps, 7.0).volume_per_l2() == doctest::Approx(10.5).epsilon(1e-9));
  }
}

TEST_CASE("small eps tends to the closed forms") {
  const double t = 0.4;
  const TubeProfile p = integrate_tube(t, 1e-6, 10.0, 2.0);
  CHECK(p.r0 == doctest::Approx(r0_closed(t)).epsilon(1e-5));
  CHECK(p.m == doctest::Approx(m_closed(t, 10.0)).epsilon(1e-5));
  const TubeProfile z = integrate_tube(t, 0.0, 10.0, 2.0);
  CHECK(z.r0 == doctest::Approx(r0_closed(t)).epsilon(1e-12));
  for (std::size_t i = 0; i < z.size(); i += 97) {
    CHECK(z.f[i] == doctest::Approx(f0_closed(t, 10.0, z.r[i]).f).epsilon(1e-12).scale(1e-12));
    CHECK(z.g[i] == doctest::Approx(g0_closed(t, 2.0, z.r[i], z.r0)).epsilon(1e-9));
  }
}

TEST_CASE("profile checks and step halving") {
  for (auto [t, eps] : {std::pair{0.3, 0.5}, {0.7, 1e-4}, {0.5, 0.0}}) {
    CAPTURE(t);
    CAPTURE(eps);
    const TubeProfile p = integrate_tube(t, eps, 8.0, 5.0);
    const ProfileCheck c = check_profile(p);
    CHECK(c.ok());
    CHECK(richardson(t, eps, 8.0, 5.0).ok);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p.r[i] > p.r[i - 1]);
    CHECK(curvature_max(p) == doctest::Approx(curvatures(p).max()).epsilon(1e-14));
    CHECK(curvature_max(p) <= -t + 1e-12);
  }
}

TEST_CASE("eps(t) solve") {
  const double l1 = 8, hl = h(l1);
  double prev = INFINITY;
  for (int j = 1; j <= 8; ++j) {
    const double t = hl * (1 - std::ldexp(1.0, -j));
    const EpsilonSolve s = solve_epsilon(t, l1);
    CHECK(std::fabs(s.m - kTau) <= 1e-8 * kTau);
    CHECK(s.eps < prev);
    CHECK(s.eps > 0);
    CHECK(cone_angle(t, s.eps, l1) == doctest::Approx(kTau).epsilon(1e-8));
    prev = s.eps;
  }
  CHECK_THROWS_AS(solve_epsilon(hl, l1), HypothesisError);
  CHECK_THROWS_AS(solve_epsilon(0.5, 6.0), HypothesisError);
  CHECK_THROWS_AS(solve_epsilon(-0.1, 8.0), InputError);
}

TEST_CASE("built tube certificate") {
  const BuiltTube b = build_tube(8, 5, 0.99);
  const TubeCertificate& c = b.certificate;
  CHECK(c.volume_ok);
  CHECK(c.curvature_ok);
  CHECK(c.volume >= 19.8);
  CHECK(c.cone_angle == doctest::Approx(kTau).epsilon(1e-8));
  CHECK(c.curvature_max <= -0.99 * h(8) + 1e-9);
  CHECK(c.t >= 0.99 * h(8));
  CHECK(c.t < h(8));
  CHECK_FALSE(c.note.empty());
  CHECK_THROWS_AS(build_tube(6, 5, 0.5), HypothesisError);
  CHECK_THROWS_AS(build_tube(8, 5, 1.0), InputError);
  CHECK_THROWS_AS(build_tube(8, 5, 0.5, 1.0), InputError);
}

TEST_CASE("metric bound formula") {
  const MetricBound m = manifold_metric_bound(2.03, {1.0}, 7.0, 0.9);
  const double hh = 1 - std::pow(kTau / 7, 2);
  CHECK(m.bound == doctest::Approx(std::pow(0.9, 2.5) * std::pow(hh, 1.5) * 2.03));
  CHECK(m.supremum == doctest::Approx(std::pow(hh, 1.5) * 2.03));
  CHECK(m.refined == doctest::Approx(std::pow(0.9 * hh, 1.5) * (2.03 - 0.1)));
  CHECK(manifold_metric_bound(2.03, {}, 7.0, 1.0).bound == doctest::Approx(m.supremum));
  CHECK_THROWS(manifold_metric_bound(2.03, {}, 7.0, 0.0));
}

TEST_CASE("ordering and regularity suites") {
  const MonotonicityReport r = monotonicity_suite(0.3, 0.6, 0.1, 0.7, 8.0);
  CHECK(r.cases.size() == 4);
  CHECK(r.ok());
  const MonotonicityCase c = monotonicity_eps(0.5, 0.0, 0.4, 8.0);
  CHECK(c.ok);
  CHECK(c.m1 > c.m2);
  CHECK(c.min_phi >= -1e-12);
  const RegularityReport reg = regularity_sequence(8.0, 8);
  CHECK(reg.ok());
  CHECK(reg.steps.size() == 8);
  const InequalityHarness hs = differential_inequality_harness(50, 9);
  CHECK(hs.ok());
}

TEST_CASE("tolerance profiles from the environment") {
  setenv("TWISTVOL_TOLERANCE", "strict", 1);
  const TubeOptions strict = tube_options_from_env();
  setenv("TWISTVOL_TOLERANCE", "fast", 1);
  const TubeOptions fast = tube_options_from_env();
  CHECK(strict.delta < fast.delta);
  setenv("TWISTVOL_TOLERANCE", "bogus", 1);
  CHECK_THROWS_AS(tube_options_from_env(), InputError);
  unsetenv("TWISTVOL_TOLERANCE");
  CHECK(tube_options_from_env().delta == TubeOptions{}.delta);
}
