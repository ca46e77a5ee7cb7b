#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <random>
#include <vector>

#include "twistvol/kernels.hpp"
#include "twistvol/tube.hpp"

using namespace twistvol;
namespace K = twistvol::kernels;

namespace {

struct Arrays {
  std::vector<double> x, y, yp, k, kp, f, fp;
};

Arrays random_arrays(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  Arrays a;
  double x = -3;
  for (std::size_t i = 0; i < n; ++i) {
    x += 0.01 + 0.1 * u(rng);
    a.x.push_back(x);
    a.y.push_back(std::sin(x) + u(rng));
    a.yp.push_back(std::cos(x));
    a.k.push_back(0.1 + 0.9 * u(rng));
    a.kp.push_back(u(rng) - 0.5);
    a.f.push_back(u(rng) - 0.1);
    a.fp.push_back(0.5 + u(rng));
  }
  return a;
}

double trapezoid_ref(const Arrays& a) {
  double s = 0;
  for (std::size_t i = 0; i + 1 < a.x.size(); ++i) {
    const double hh = a.x[i + 1] - a.x[i];
    s += hh / 2 * (a.y[i] + a.y[i + 1]) + hh * hh / 12 * (a.yp[i] - a.yp[i + 1]);
  }
  return s;
}

K::CurvatureMax curvature_ref(const Arrays& a) {
  K::CurvatureMax m{-INFINITY, -INFINITY, -INFINITY};
  for (std::size_t i = 0; i < a.k.size(); ++i) {
    if (!(a.f[i] > 0)) continue;
    m.k12 = std::max(m.k12, -a.k[i]);
    m.k13 = std::max(m.k13, -(a.k[i] + a.f[i] / a.fp[i] * a.kp[i]));
    m.k23 = std::max(m.k23, -a.k[i]);
  }
  return m;
}

}  // namespace

TEST_CASE("Hermite trapezoid integrates cubics exactly") {
  std::vector<double> x, y, yp;
  for (int i = 0; i <= 37; ++i) {
    const double r = -2 + 0.1 * i + 0.003 * (i % 3);
    x.push_back(r);
    y.push_back(r * r * r - 2 * r + 1);
    yp.push_back(3 * r * r - 2);
  }
  auto prim = [](double r) { return r * r * r * r / 4 - r * r + r; };
  const double exact = prim(x.back()) - prim(x.front());
  CHECK(K::scalar::hermite_trapezoid(x.data(), y.data(), yp.data(), x.size()) == doctest::Approx(exact).epsilon(1e-13));
  CHECK(K::avx2::hermite_trapezoid(x.data(), y.data(), yp.data(), x.size()) == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("scalar and AVX2 kernels agree with the reference loops") {
  if (!K::avx2_available()) {
    MESSAGE("AVX2 not available: only the scalar path is exercised");
  }
  std::mt19937_64 rng(42);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 100u, 1001u}) {
    CAPTURE(n);
    const Arrays a = random_arrays(n, rng);
    const double ref = trapezoid_ref(a);
    CHECK(K::scalar::hermite_trapezoid(a.x.data(), a.y.data(), a.yp.data(), n) == doctest::Approx(ref).epsilon(1e-13));
    const auto cr = curvature_ref(a);
    const auto cs = K::scalar::curvature_max(a.k.data(), a.kp.data(), a.f.data(), a.fp.data(), n);
    CHECK(cs.k12 == cr.k12);
    CHECK(cs.k13 == doctest::Approx(cr.k13).epsilon(1e-15));
    CHECK(cs.k23 == cr.k23);
    if (K::avx2_available()) {
      CHECK(K::avx2::hermite_trapezoid(a.x.data(), a.y.data(), a.yp.data(), n) == doctest::Approx(ref).epsilon(1e-13));
      const auto cv = K::avx2::curvature_max(a.k.data(), a.kp.data(), a.f.data(), a.fp.data(), n);
      CHECK(cv.k12 == cr.k12);
      CHECK(cv.k13 == doctest::Approx(cr.k13).epsilon(1e-14));
      CHECK(cv.k23 == cr.k23);
    }
  }
}

TEST_CASE("residual kernels on an exact exponential") {
  std::vector<double> r, f, fp, lng, k;
  const double hh = 1e-3;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -2 + i * hh;
    r.push_back(x);
    f.push_back(std::exp(x));
    fp.push_back(std::exp(x));
    lng.push_back(x);
    k.push_back(1);
  }
  const K::GridView g{r.data(), f.data(), fp.data(), lng.data(), k.data(), r.size()};
  const K::Residuals s = K::scalar::ode_residuals(g);
  CHECK(s.checked > 1900);
  CHECK(s.f < 1e-9);
  CHECK(s.fp < 1e-9);
  CHECK(s.lng < 1e-9);
  if (K::avx2_available()) {
    const K::Residuals v = K::avx2::ode_residuals(g);
    CHECK(v.checked == s.checked);
    CHECK(v.f == doctest::Approx(s.f).epsilon(1e-6));
    CHECK(v.lng == doctest::Approx(s.lng).epsilon(1e-6));
  }
}

TEST_CASE("kernel variants agree on real tube profiles") {
  for (auto [t, eps] : {std::pair{0.3, 0.2}, {0.6, 1e-3}, {0.5, 0.0}, {0.8, 1.2}}) {
    CAPTURE(t);
    CAPTURE(eps);
    const TubeProfile p = integrate_tube(t, eps, 8.0, 5.0);
    const K::GridView g{p.r.data(), p.f.data(), p.fp.data(), p.lng.data(), p.k.data(), p.size(), 0.5 * p.delta / 50};
    const K::Residuals s = K::scalar::ode_residuals(g);
    std::vector<double> y(p.size()), yp(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      y[i] = p.f[i] * p.g[i];
      yp[i] = p.g[i] * (p.fp[i] + p.k[i] * p.f[i] * p.f[i] / p.fp[i]);
    }
    const double vs = K::scalar::hermite_trapezoid(p.r.data(), y.data(), yp.data(), p.size());
    CHECK(vs == doctest::Approx(20).epsilon(1e-9));
    if (!K::avx2_available()) continue;
    const K::Residuals v = K::avx2::ode_residuals(g);
    CHECK(v.checked == s.checked);
    CHECK(std::fabs(v.f - s.f) <= 1e-14 + 1e-6 * s.f);
    CHECK(std::fabs(v.fp - s.fp) <= 1e-14 + 1e-6 * s.fp);
    CHECK(std::fabs(v.lng - s.lng) <= 1e-14 + 1e-6 * s.lng);
    CHECK(K::avx2::hermite_trapezoid(p.r.data(), y.data(), yp.data(), p.size()) == doctest::Approx(vs).epsilon(1e-13));
    const auto cs = K::scalar::curvature_max(p.k.data(), p.kp.data(), p.f.data(), p.fp.data(), p.size());
    const auto cv = K::avx2::curvature_max(p.k.data(), p.kp.data(), p.f.data(), p.fp.data(), p.size());
    CHECK(cv.k13 == doctest::Approx(cs.k13).epsilon(1e-14));
  }
}

TEST_CASE("dispatch") {
  const K::Isa before = K::active_isa();
  K::select_isa(K::Isa::Scalar);
  CHECK(K::active_isa() == K::Isa::Scalar);
  CHECK(std::string(K::isa_name(K::Isa::Scalar)) == "scalar");
  K::select_isa(K::Isa::Avx2);
  CHECK(K::active_isa() == (K::avx2_available() ? K::Isa::Avx2 : K::Isa::Scalar));
  K::select_isa(before);
}
