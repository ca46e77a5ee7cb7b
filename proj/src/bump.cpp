#include "twistvol/bump.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "twistvol/errors.hpp"

namespace twistvol {

double bump_z(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double v = u - 1.0;
  return std::exp(-1.0 / (u * u) - 1.0 / (v * v));
}

double bump_z_prime(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double v = u - 1.0;
  return bump_z(u) * (2.0 / (u * u * u) + 2.0 / (v * v * v));
}

namespace {

constexpr int kIntervals = 4096;

// Cumulative integrals at u_i = i / kIntervals, each interval by 10-point
// Gauss-Legendre; values between nodes by quintic Hermite on (Z, z, z').
struct ZTable {
  std::vector<double> cum;
  ZTable() : cum(kIntervals + 1, 0.0) {
    static constexpr std::array<double, 5> x{0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                             0.8650633666889845, 0.9739065285171717};
    static constexpr std::array<double, 5> w{0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                             0.1494513491505806, 0.0666713443086881};
    const double h = 1.0 / kIntervals;
    for (int i = 0; i < kIntervals; ++i) {
      const double mid = (i + 0.5) * h, half = 0.5 * h;
      double s = 0;
      for (int k = 0; k < 5; ++k) s += w[k] * (bump_z(mid - half * x[k]) + bump_z(mid + half * x[k]));
      cum[i + 1] = cum[i] + s * half;
    }
  }
};

const ZTable& table() {
  static const ZTable t;
  return t;
}

}  // namespace

double bump_Z(double s) {
  const ZTable& t = table();
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return bump_norm();
  const double h = 1.0 / kIntervals;
  int i = static_cast<int>(s * kIntervals);
  if (i >= kIntervals) i = kIntervals - 1;
  const double a = i * h, b = a + h;
  const double u = (s - a) / h;
  const double y0 = t.cum[i], y1 = t.cum[i + 1];
  const double d0 = bump_z(a) * h, d1 = bump_z(b) * h;
  const double s0 = bump_z_prime(a) * h * h, s1 = bump_z_prime(b) * h * h;
  const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
  const double h00 = 1 - 10 * u3 + 15 * u4 - 6 * u5;
  const double h10 = u - 6 * u3 + 8 * u4 - 3 * u5;
  const double h20 = 0.5 * (u2 - 3 * u3 + 3 * u4 - u5);
  const double h01 = 10 * u3 - 15 * u4 + 6 * u5;
  const double h11 = -4 * u3 + 7 * u4 - 3 * u5;
  const double h21 = 0.5 * (u3 - 2 * u4 + u5);
  const double v = h00 * y0 + h10 * d0 + h20 * s0 + h01 * y1 + h11 * d1 + h21 * s1;
  // rescale so that the table total matches the adaptive normalization
  return v * (bump_norm() / t.cum[kIntervals]);
}

double bump_norm() {
  static const double z1 = [] {
    double err = 0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(bump_z, 0.0, 1.0, 20, 1e-15, &err);
    if (!(err < 1e-12)) throw NumericError("bump normalization did not converge");
    return v;
  }();
  return z1;
}

double bump_norm_from_table() { return table().cum[kIntervals]; }

double bump(double t, double eps, double r) {
  if (!(t > 0.0 && t < 1.0)) throw InputError("bump: t must lie in (0,1)");
  if (!(eps >= 0.0)) throw InputError("bump: eps must be nonnegative");
  if (eps == 0.0) return r < 0.0 ? t : 1.0;
  if (r <= -eps) return t;
  if (r >= -0.5 * eps) return 1.0;
  return t + (1.0 - t) * bump_Z(2.0 + 2.0 * r / eps) / bump_norm();
}

double bump_prime(double t, double eps, double r) {
  if (eps == 0.0 || r <= -eps || r >= -0.5 * eps) return 0.0;
  return (1.0 - t) * (2.0 / eps) * bump_z(2.0 + 2.0 * r / eps) / bump_norm();
}

}  // namespace twistvol
