#include <atomic>
#include <cstdlib>
#include <cstring>

#include "twistvol/kernels.hpp"

namespace twistvol::kernels {

namespace {

Isa detect() {
  const char* env = std::getenv("TWISTVOL_KERNELS");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_available() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void select_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
  current().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double hermite_trapezoid(const double* x, const double* y, const double* yp, std::size_t n) {
  return active_isa() == Isa::Avx2 ? avx2::hermite_trapezoid(x, y, yp, n) : scalar::hermite_trapezoid(x, y, yp, n);
}

CurvatureMax curvature_max(const double* k, const double* kp, const double* f, const double* fp, std::size_t n) {
  return active_isa() == Isa::Avx2 ? avx2::curvature_max(k, kp, f, fp, n) : scalar::curvature_max(k, kp, f, fp, n);
}

Residuals ode_residuals(const GridView& g) {
  return active_isa() == Isa::Avx2 ? avx2::ode_residuals(g) : scalar::ode_residuals(g);
}

}  // namespace twistvol::kernels
