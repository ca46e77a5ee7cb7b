#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "twistvol/bump.hpp"

using namespace twistvol;

namespace {

double z_ref(double u) { return u <= 0 || u >= 1 ? 0 : std::exp(-1 / (u * u) - 1 / ((u - 1) * (u - 1))); }

// Composite Simpson on [0, s] with n (even) panels.
double simpson(double s, int n) {
  const double hh = s / n;
  double acc = z_ref(0) + z_ref(s);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4 : 2) * z_ref(i * hh);
  return acc * hh / 3;
}

}  // namespace

TEST_CASE("z and its derivative") {
  for (double u = -0.5; u <= 1.5; u += 0.0137) {
    CAPTURE(u);
    CHECK(bump_z(u) == doctest::Approx(z_ref(u)).epsilon(1e-14));
    CHECK(bump_z(u) == doctest::Approx(bump_z(1 - u)).epsilon(1e-12));
    if (u > 0.02 && u < 0.98) {
      const double e = 1e-6;
      CHECK(bump_z_prime(u) == doctest::Approx((z_ref(u + e) - z_ref(u - e)) / (2 * e)).epsilon(1e-6));
    }
  }
  CHECK(bump_z(0) == 0);
  CHECK(bump_z(1) == 0);
  CHECK(bump_z_prime(-1) == 0);
}

TEST_CASE("normalizing integral") {
  const double ref = simpson(1.0, 20000);
  CHECK(bump_norm() == doctest::Approx(ref).epsilon(1e-12));
  CHECK(bump_norm_from_table() == doctest::Approx(bump_norm()).epsilon(1e-12));
  for (double s : {0.1, 0.25, 0.5, 0.7, 0.93}) CHECK(bump_Z(s) == doctest::Approx(simpson(s, 20000)).epsilon(1e-10));
  CHECK(bump_Z(-1) == 0);
  CHECK(bump_Z(2) == bump_norm());
  CHECK(bump_Z(0.5) == doctest::Approx(bump_norm() / 2).epsilon(1e-13));
}

TEST_CASE("k profile") {
  const double t = 0.37, eps = 0.8;
  CHECK(bump(t, eps, -1.0) == t);
  CHECK(bump(t, eps, -eps) == doctest::Approx(t));
  CHECK(bump(t, eps, -eps / 2) == doctest::Approx(1));
  CHECK(bump(t, eps, 0.3) == 1);
  CHECK(bump(t, eps, -0.75 * eps) == doctest::Approx(0.5 * (1 + t)).epsilon(1e-12));
  double prev = bump(t, eps, -eps);
  for (double r = -eps; r <= -eps / 2; r += eps / 997) {
    const double k = bump(t, eps, r);
    CHECK(k >= prev - 1e-15);
    CHECK(k >= t);
    CHECK(k <= 1 + 1e-15);
    prev = k;
    const double e = 1e-7;
    if (r > -eps + 1e-3 && r < -eps / 2 - 1e-3)
      CHECK(bump_prime(t, eps, r) ==
            doctest::Approx((bump(t, eps, r + e) - bump(t, eps, r - e)) / (2 * e)).epsilon(1e-5));
  }
  CHECK(bump_prime(t, eps, -2) == 0);
  CHECK(bump_prime(t, eps, 0) == 0);
  CHECK(bump(t, 0, -1e-12) == t);
  CHECK(bump(t, 0, 0) == 1);
  CHECK(bump_prime(t, 0, 0) == 0);
}
