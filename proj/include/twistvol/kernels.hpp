#pragma once

#include <cstddef>

namespace twistvol::kernels {

/// Sampled profile arrays, all of length n, r strictly increasing.
struct GridView {
  const double* r;
  const double* f;
  const double* fp;
  const double* lng;
  const double* k;
  std::size_t n;
  double min_step = 0;  // stencils with a shorter step sit below roundoff and are skipped
};

struct Residuals {
  double f = 0;    // max |Df - S(f')|
  double fp = 0;   // max |Df' - S(k f)|
  double lng = 0;  // max |D ln g - S(k f / f')|
  std::size_t checked = 0;
};

struct CurvatureMax {
  double k12, k13, k23;
};

/// Sum over [x_i, x_i+1] of (h/2)(y_i + y_i+1) + (h^2/12)(y'_i - y'_i+1).
using HermiteTrapezoidFn = double (*)(const double* x, const double* y, const double* yp, std::size_t n);
/// Maxima of -k, -(k + (f/f') k'), -k over samples with f > 0.
using CurvatureMaxFn = CurvatureMax (*)(const double* k, const double* kp, const double* f, const double* fp,
                                        std::size_t n);
/// Central differences against Simpson averages of the right-hand sides, at
/// interior samples whose two neighbouring steps agree to 1e-6 relative and
/// are at least min_step; the partial interval at r0 is skipped.
using ResidualsFn = Residuals (*)(const GridView& g);

namespace scalar {
double hermite_trapezoid(const double* x, const double* y, const double* yp, std::size_t n);
CurvatureMax curvature_max(const double* k, const double* kp, const double* f, const double* fp, std::size_t n);
Residuals ode_residuals(const GridView& g);
}  // namespace scalar

namespace avx2 {
double hermite_trapezoid(const double* x, const double* y, const double* yp, std::size_t n);
CurvatureMax curvature_max(const double* k, const double* kp, const double* f, const double* fp, std::size_t n);
Residuals ode_residuals(const GridView& g);
}  // namespace avx2

enum class Isa { Scalar, Avx2 };

/// Chosen once: AVX2+FMA when the CPU has them, unless TWISTVOL_KERNELS=scalar.
Isa active_isa();
bool avx2_available();
/// Override the selection (tests, benchmarks). Avx2 falls back to scalar
/// when unsupported.
void select_isa(Isa isa);
const char* isa_name(Isa isa);

double hermite_trapezoid(const double* x, const double* y, const double* yp, std::size_t n);
CurvatureMax curvature_max(const double* k, const double* kp, const double* f, const double* fp, std::size_t n);
Residuals ode_residuals(const GridView& g);

}  // namespace twistvol::kernels
