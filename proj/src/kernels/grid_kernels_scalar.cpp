#include <algorithm>
#include <cmath>
#include <limits>

#include "twistvol/kernels.hpp"

namespace twistvol::kernels::scalar {

double hermite_trapezoid(const double* x, const double* y, const double* yp, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x[i + 1] - x[i];
    s += 0.5 * h * (y[i] + y[i + 1]) + h * h / 12.0 * (yp[i] - yp[i + 1]);
  }
  return s;
}

CurvatureMax curvature_max(const double* k, const double* kp, const double* f, const double* fp, std::size_t n) {
  const double lo = -std::numeric_limits<double>::infinity();
  CurvatureMax m{lo, lo, lo};
  for (std::size_t i = 0; i < n; ++i) {
    if (!(f[i] > 0)) continue;
    m.k12 = std::max(m.k12, -k[i]);
    m.k13 = std::max(m.k13, -(k[i] + f[i] / fp[i] * kp[i]));
    m.k23 = std::max(m.k23, -k[i]);
  }
  return m;
}

Residuals ode_residuals(const GridView& g) {
  Residuals r;
  for (std::size_t i = 2; i + 1 < g.n; ++i) {
    const double hl = g.r[i] - g.r[i - 1], hr = g.r[i + 1] - g.r[i];
    if (std::fabs(hl - hr) > 1e-6 * (hl + hr) || hl < g.min_step) continue;
    const double w = 1.0 / (hl + hr);
    const double kf0 = g.k[i - 1] * g.f[i - 1], kf1 = g.k[i] * g.f[i], kf2 = g.k[i + 1] * g.f[i + 1];
    const double sfp = (g.fp[i - 1] + 4 * g.fp[i] + g.fp[i + 1]) / 6;
    const double skf = (kf0 + 4 * kf1 + kf2) / 6;
    const double slg = (kf0 / g.fp[i - 1] + 4 * kf1 / g.fp[i] + kf2 / g.fp[i + 1]) / 6;
    r.f = std::max(r.f, std::fabs((g.f[i + 1] - g.f[i - 1]) * w - sfp));
    r.fp = std::max(r.fp, std::fabs((g.fp[i + 1] - g.fp[i - 1]) * w - skf));
    r.lng = std::max(r.lng, std::fabs((g.lng[i + 1] - g.lng[i - 1]) * w - slg));
    ++r.checked;
  }
  return r;
}

}  // namespace twistvol::kernels::scalar
