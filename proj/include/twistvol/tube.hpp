#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistvol/errors.hpp"

namespace twistvol {

struct TubeParams {
  double l1 = 0;  // meridian length
  double l2 = 0;  // area / l1
  double t = 0;
  double eps = 0;
  double zeta = 0;
  double theta = 0;  // shearing factor; carried, never used
};

struct TubeOptions {
  double delta = 1e-4;       // RK4 step outside the bump band
  double band_ratio = 2e-4;  // band step: min(delta, max(eps * band_ratio, min(delta / 50, eps / 128)))
  double r_max = 50;
  double root_tol = 1e-10;
  double bisect_tol = 1e-15;  // relative bracket width at which the eps bisection stops
  int shoot_band_steps = 2048;  // RK4 steps across the band in the shooting solve
};

/// Tolerance profile from TWISTVOL_TOLERANCE (default | fast | strict).
TubeOptions tube_options_from_env();

struct FPair {
  double f, fp;
};

FPair f0_closed(double t, double l1, double r);
double r0_closed(double t);
double m_closed(double t, double l1);
double g0_closed(double t, double l2, double r, double r0);

/// Solution of f'' = k f, f(0) = f'(0) = l1, with (ln g)' = k f / f'. For
/// r <= -eps the equation has constant coefficient t, so the tail is
/// c1 e^(sqrt(t) r) + c2 e^(-sqrt(t) r); the band (-eps, -eps/2) is
/// integrated with RK4 and kept as samples for point evaluation.
class FSolution {
public:
  FSolution(double t, double eps, double l1, int band_steps = 2048);

  double t() const { return t_; }
  double eps() const { return eps_; }
  double l1() const { return l1_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double r0() const { return r0_; }
  double cone_angle() const { return m_; }
  bool has_root() const { return has_root_; }

  FPair eval(double r) const;
  /// ln(g(r) / l2)
  double log_g(double r) const;
  /// integral of f g over [r0, 0] divided by l2
  double volume_per_l2() const { return vol_; }

private:
  struct State {
    double f, fp, lg, v;
  };
  State step(const State& s, double r, double h) const;

  double t_, eps_, l1_, st_;
  double c1_ = 0, c2_ = 0, r0_ = 0, m_ = 0, vol_ = 0;
  bool has_root_ = false;
  double band_h_ = 0;
  std::vector<State> band_;  // band_[i] at r = -eps/2 - i * band_h_
};

double cone_angle(double t, double eps, double l1, int band_steps = 2048);

struct TubeProfile {
  TubeParams params;
  std::vector<double> r, f, fp, lng, g, k, kp;  // r increasing, r[0] = r0
  double r0 = 0;
  double m = 0;
  double delta = 0, band_step = 0;
  std::size_t size() const { return r.size(); }
};

/// f-part: backward RK4 from 0 with segments aligned at -eps/2 and -eps,
/// root bracketed by a sign change and polished by bisection then Newton.
/// eps = 0 samples the closed forms. ln g is integrated alongside.
TubeProfile integrate_f(double t, double eps, double l1, const TubeOptions& opts = {});
/// g-part: g = l2 exp(ln g). Requires f' > 0 on the grid.
void integrate_g(TubeProfile& p, double l2);
TubeProfile integrate_tube(double t, double eps, double l1, double l2, const TubeOptions& opts = {});

double tube_volume(const TubeProfile& p);

struct Curvatures {
  std::vector<double> r, k12, k13, k23;  // samples with f > 0
  double max12, max13, max23;
  double max() const;
};

Curvatures curvatures(const TubeProfile& p);
/// Kernel-backed maximum of all three curvatures.
double curvature_max(const TubeProfile& p);

struct ProfileCheck {
  bool initial_ok = false;
  bool fp_positive = false;
  bool r0_bound = false;  // r0 < min(-eps/2, -1)
  bool f_increasing = false;
  bool root_ok = false;
  double residual_f = 0, residual_fp = 0, residual_lng = 0;
  bool residuals_ok = false;
  bool ok() const { return initial_ok && fp_positive && r0_bound && f_increasing && root_ok && residuals_ok; }
};

ProfileCheck check_profile(const TubeProfile& p);

struct RichardsonReport {
  double r0_rel = 0, m_rel = 0, volume_rel = 0;
  bool ok = false;  // all within 1e-6
};

RichardsonReport richardson(double t, double eps, double l1, double l2, const TubeOptions& opts = {});

struct EpsilonSolve {
  double eps = 0;
  double m = 0;
  int iterations = 0;
  double lo = 0, hi = 0;
};

/// The eps in (0, 2 ln(l1 / 2 pi)) with m(t, eps) = 2 pi, by bisection.
EpsilonSolve solve_epsilon(double t, double l1, const TubeOptions& opts = {});

struct TubeCertificate {
  double l1, l2, zeta, theta;
  double t, eps, cone_angle, r0;
  double volume, volume_target;
  double curvature_max, curvature_bound;
  int line_search_steps;
  bool volume_ok, curvature_ok;
  std::string note;
};

struct BuiltTube {
  TubeProfile profile;
  TubeCertificate certificate;
};

BuiltTube build_tube(double l1, double l2, double zeta, double theta = 0, const TubeOptions& opts = {});

struct MetricBound {
  double bound;      // zeta^(5/2) h^(3/2) vol
  double supremum;   // h^(3/2) vol
  double refined;    // (zeta h)^(3/2) (vol - (1 - zeta) sum cusp volumes)
};

MetricBound manifold_metric_bound(double vol_m, const std::vector<double>& cusp_volumes, double lmin, double zeta);

}  // namespace twistvol
