#pragma once

namespace twistvol {

/// z(u) = exp(-1/u^2 - 1/(u-1)^2) on (0,1), zero outside.
double bump_z(double u);
double bump_z_prime(double u);

/// Z(s) = integral of z over [0, s], clamped to [0, Z(1)].
double bump_Z(double s);
/// Z(1), by adaptive Gauss-Kronrod; computed once.
double bump_norm();
/// Z(1) as the sum of the cumulative table, for cross-checking.
double bump_norm_from_table();

/// k_{t,eps}(r): t for r <= -eps, 1 for r >= -eps/2, normalized z-integral
/// between. eps = 0 is the step t (r < 0), 1 (r >= 0).
double bump(double t, double eps, double r);
/// d/dr k_{t,eps}(r); zero outside the band and for eps = 0.
double bump_prime(double t, double eps, double r);

}  // namespace twistvol
