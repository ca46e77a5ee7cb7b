#include "twistvol/tube.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "twistvol/bump.hpp"
#include "twistvol/kernels.hpp"
#include "twistvol/volbounds.hpp"

namespace twistvol {

namespace {

constexpr double kTwoPi = 2 * kPi;

void check_t(double t) {
  if (!(t > 0.0 && t < 1.0)) throw InputError("t must lie in (0,1)");
}

}  // namespace

TubeOptions tube_options_from_env() {
  TubeOptions o;
  const char* env = std::getenv("TWISTVOL_TOLERANCE");
  if (!env || !*env || std::strcmp(env, "default") == 0) return o;
  if (std::strcmp(env, "fast") == 0) {
    o.delta = 4e-4;
    o.band_ratio = 8e-4;
    o.shoot_band_steps = 1024;
  } else if (std::strcmp(env, "strict") == 0) {
    o.delta = 5e-5;
    o.band_ratio = 1e-4;
    o.shoot_band_steps = 4096;
  } else {
    throw InputError(std::string("unknown TWISTVOL_TOLERANCE profile '") + env + "'");
  }
  return o;
}

FPair f0_closed(double t, double l1, double r) {
  check_t(t);
  const double s = std::sqrt(t);
  if (r >= 0) return {l1 * std::exp(r), l1 * std::exp(r)};
  const double c = std::cosh(r * s), sh = std::sinh(r * s);
  return {l1 * c + l1 / s * sh, l1 * s * sh + l1 * c};
}

double r0_closed(double t) {
  check_t(t);
  const double s = std::sqrt(t);
  return -std::atanh(s) / s;
}

double m_closed(double t, double l1) {
  check_t(t);
  return l1 * std::sqrt(1.0 - t);
}

double g0_closed(double t, double l2, double r, double r0) {
  check_t(t);
  return l2 * std::sqrt(1.0 - t) * std::cosh(std::sqrt(t) * (r - r0));
}

FSolution::State FSolution::step(const State& s, double r, double h) const {
  auto rhs = [&](const State& u, double x) {
    const double k = bump(t_, eps_, x);
    return State{u.fp, k * u.f, k * u.f / u.fp, u.f * std::exp(u.lg)};
  };
  auto add = [](const State& a, const State& d, double c) {
    return State{a.f + c * d.f, a.fp + c * d.fp, a.lg + c * d.lg, a.v + c * d.v};
  };
  const State k1 = rhs(s, r);
  const State k2 = rhs(add(s, k1, 0.5 * h), r + 0.5 * h);
  const State k3 = rhs(add(s, k2, 0.5 * h), r + 0.5 * h);
  const State k4 = rhs(add(s, k3, h), r + h);
  return State{s.f + h / 6 * (k1.f + 2 * k2.f + 2 * k3.f + k4.f), s.fp + h / 6 * (k1.fp + 2 * k2.fp + 2 * k3.fp + k4.fp),
               s.lg + h / 6 * (k1.lg + 2 * k2.lg + 2 * k3.lg + k4.lg), s.v + h / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
}

FSolution::FSolution(double t, double eps, double l1, int band_steps) : t_(t), eps_(eps), l1_(l1), st_(std::sqrt(t)) {
  check_t(t);
  if (!(eps >= 0)) throw InputError("eps must be nonnegative");
  if (!(l1 > 0)) throw InputError("l1 must be positive");
  if (band_steps < 1) throw InputError("band_steps must be positive");
  double F = l1, Fp = l1, LG = 0, near = 0, band_vol = 0;
  if (eps > 0) {
    const double e = std::exp(-0.5 * eps);
    State s{l1 * e, l1 * e, -0.5 * eps, 0.0};
    band_h_ = 0.5 * eps / band_steps;
    band_.reserve(band_steps + 1);
    band_.push_back(s);
    for (int i = 0; i < band_steps; ++i) {
      const double r = -0.5 * eps - i * band_h_;
      const State nx = step(s, r, -band_h_);
      if (nx.f <= 0 && !has_root_) {
        // root inside the band: bisect the single step, then Newton
        double lo = 0, hi = band_h_;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * band_h_; ++it) {
          const double mid = 0.5 * (lo + hi);
          (step(s, r, -mid).f > 0 ? lo : hi) = mid;
        }
        double tau = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) {
          const State q = step(s, r, -tau);
          tau += q.f / q.fp;
        }
        const State q = step(s, r, -tau);
        has_root_ = true;
        r0_ = r - tau;
        m_ = q.fp;
        vol_ = l1 * (1 - std::exp(-eps)) / 2 - q.v;
      }
      s = nx;
      band_.push_back(s);
    }
    F = s.f;
    Fp = s.fp;
    LG = s.lg;
    near = l1 * (1 - std::exp(-eps)) / 2;
    band_vol = -s.v;
  }
  c1_ = (F + Fp / st_) / (2 * std::exp(-st_ * eps));
  c2_ = (F - Fp / st_) / (2 * std::exp(st_ * eps));
  if (has_root_) return;
  if (c2_ < 0 && c1_ > 0) {
    has_root_ = true;
    r0_ = std::log(-c2_ / c1_) / (2 * st_);
    m_ = 2 * st_ * std::sqrt(-c1_ * c2_);
    vol_ = near + band_vol + std::exp(LG) * F * F / (2 * Fp);
  } else {
    r0_ = -std::numeric_limits<double>::infinity();
  }
}

FPair FSolution::eval(double r) const {
  if (r >= -0.5 * eps_ && !(eps_ == 0 && r < 0)) return {l1_ * std::exp(r), l1_ * std::exp(r)};
  if (r <= -eps_) {
    const double a = c1_ * std::exp(st_ * r), b = c2_ * std::exp(-st_ * r);
    return {a + b, st_ * (a - b)};
  }
  const double off = -0.5 * eps_ - r;
  std::size_t i = std::min(static_cast<std::size_t>(off / band_h_), band_.size() - 2);
  const double ri = -0.5 * eps_ - i * band_h_;
  const State s = step(band_[i], ri, r - ri);
  return {s.f, s.fp};
}

double FSolution::log_g(double r) const {
  if (r >= -0.5 * eps_ && !(eps_ == 0 && r < 0)) return r;
  if (r <= -eps_) {
    const double lg = eps_ > 0 ? band_.back().lg : 0.0;
    const double fp_eps = eps_ > 0 ? band_.back().fp : l1_;
    return lg + std::log(eval(r).fp / fp_eps);
  }
  const double off = -0.5 * eps_ - r;
  std::size_t i = std::min(static_cast<std::size_t>(off / band_h_), band_.size() - 2);
  const double ri = -0.5 * eps_ - i * band_h_;
  return step(band_[i], ri, r - ri).lg;
}

double cone_angle(double t, double eps, double l1, int band_steps) {
  if (eps == 0) return m_closed(t, l1);
  FSolution s(t, eps, l1, band_steps);
  if (!s.has_root()) throw NumericError("root not found: f has no zero");
  return s.cone_angle();
}

TubeProfile integrate_f(double t, double eps, double l1, const TubeOptions& opts) {
  check_t(t);
  if (!(eps >= 0)) throw InputError("eps must be nonnegative");
  if (!(l1 > 0)) throw InputError("l1 must be positive");
  if (!(opts.delta > 0) || !(opts.band_ratio > 0)) throw InputError("step sizes must be positive");
  TubeProfile p;
  p.params.t = t;
  p.params.eps = eps;
  p.params.l1 = l1;
  p.delta = opts.delta;
  std::vector<double> r, f, fp, lg;
  if (eps == 0) {
    p.r0 = r0_closed(t);
    p.band_step = 0;
    for (long i = 0;; ++i) {
      const double x = -i * opts.delta;
      if (x <= p.r0) break;
      const FPair v = f0_closed(t, l1, x);
      r.push_back(x);
      f.push_back(v.f);
      fp.push_back(v.fp);
      lg.push_back(std::log(g0_closed(t, 1.0, x, p.r0)));
    }
    r.push_back(p.r0);
    f.push_back(0.0);
    fp.push_back(m_closed(t, l1));
    lg.push_back(std::log(std::sqrt(1.0 - t)));
    p.m = fp.back();
  } else {
    struct S {
      double f, fp, lg;
    };
    auto rk4 = [&](const S& s, double x, double h) {
      auto rhs = [&](const S& u, double y) {
        const double k = bump(t, eps, y);
        return S{u.fp, k * u.f, k * u.f / u.fp};
      };
      const S k1 = rhs(s, x);
      const S k2 = rhs({s.f + 0.5 * h * k1.f, s.fp + 0.5 * h * k1.fp, s.lg + 0.5 * h * k1.lg}, x + 0.5 * h);
      const S k3 = rhs({s.f + 0.5 * h * k2.f, s.fp + 0.5 * h * k2.fp, s.lg + 0.5 * h * k2.lg}, x + 0.5 * h);
      const S k4 = rhs({s.f + h * k3.f, s.fp + h * k3.fp, s.lg + h * k3.lg}, x + h);
      return S{s.f + h / 6 * (k1.f + 2 * k2.f + 2 * k3.f + k4.f), s.fp + h / 6 * (k1.fp + 2 * k2.fp + 2 * k3.fp + k4.fp),
               s.lg + h / 6 * (k1.lg + 2 * k2.lg + 2 * k3.lg + k4.lg)};
    };
    S s{l1, l1, 0.0};
    r.push_back(0.0);
    f.push_back(s.f);
    fp.push_back(s.fp);
    lg.push_back(s.lg);
    const double hb = std::min(opts.delta, std::max(eps * opts.band_ratio, std::min(opts.delta / 50, eps / 128)));
    p.band_step = hb;
    struct Segment {
      double start, length, h;
    };
    const Segment segs[3] = {{0.0, 0.5 * eps, opts.delta}, {-0.5 * eps, 0.5 * eps, hb}, {-eps, opts.r_max, opts.delta}};
    bool rooted = false;
    for (const Segment& seg : segs) {
      const long n = std::max(1L, static_cast<long>(std::ceil(seg.length / seg.h - 1e-9)));
      const double h = seg.length / n;
      for (long i = 0; i < n && !rooted; ++i) {
        const double x = seg.start - i * h;
        const S nx = rk4(s, x, -h);
        if (nx.f <= 0) {
          double lo = 0, hi = h;
          for (int it = 0; it < 200 && hi - lo > 1e-16 * h; ++it) {
            const double mid = 0.5 * (lo + hi);
            (rk4(s, x, -mid).f > 0 ? lo : hi) = mid;
          }
          double tau = 0.5 * (lo + hi);
          for (int it = 0; it < 4; ++it) {
            const S q = rk4(s, x, -tau);
            const double d = q.f / q.fp;
            tau += d;
            if (std::fabs(d) <= opts.root_tol * 1e-3) break;
          }
          const S q = rk4(s, x, -tau);
          r.push_back(x - tau);
          f.push_back(q.f);
          fp.push_back(q.fp);
          lg.push_back(q.lg);
          rooted = true;
          break;
        }
        s = nx;
        r.push_back(seg.start - (i + 1) * h);
        f.push_back(s.f);
        fp.push_back(s.fp);
        lg.push_back(s.lg);
      }
      if (rooted) break;
    }
    if (!rooted)
      throw NumericError("root not found: no sign change of f on [-" + std::to_string(opts.r_max) + ", 0]");
    p.r0 = r.back();
    p.m = fp.back();
  }
  std::reverse(r.begin(), r.end());
  std::reverse(f.begin(), f.end());
  std::reverse(fp.begin(), fp.end());
  std::reverse(lg.begin(), lg.end());
  p.r = std::move(r);
  p.f = std::move(f);
  p.fp = std::move(fp);
  p.lng = std::move(lg);
  p.k.resize(p.r.size());
  p.kp.resize(p.r.size());
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    p.k[i] = bump(t, eps, p.r[i]);
    p.kp[i] = bump_prime(t, eps, p.r[i]);
  }
  // the eps = 0 profile lives on [r0, 0]: take the left limit of the step
  if (eps == 0) p.k.back() = t;
  return p;
}

void integrate_g(TubeProfile& p, double l2) {
  if (!(l2 >= 0)) throw InputError("l2 must be nonnegative");
  for (double v : p.fp)
    if (!(v > 0)) throw NumericError("f' is not positive on the grid");
  p.params.l2 = l2;
  p.g.resize(p.lng.size());
  for (std::size_t i = 0; i < p.lng.size(); ++i) p.g[i] = l2 * std::exp(p.lng[i]);
}

TubeProfile integrate_tube(double t, double eps, double l1, double l2, const TubeOptions& opts) {
  TubeProfile p = integrate_f(t, eps, l1, opts);
  integrate_g(p, l2);
  return p;
}

double tube_volume(const TubeProfile& p) {
  if (p.g.size() != p.r.size()) throw InputError("tube_volume needs the g-part");
  const std::size_t n = p.r.size();
  std::vector<double> y(n), yp(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = p.f[i] * p.g[i];
    yp[i] = p.g[i] * (p.fp[i] + p.k[i] * p.f[i] * p.f[i] / p.fp[i]);
  }
  return kernels::hermite_trapezoid(p.r.data(), y.data(), yp.data(), n);
}

double Curvatures::max() const { return std::max({max12, max13, max23}); }

Curvatures curvatures(const TubeProfile& p) {
  Curvatures c;
  const double lo = -std::numeric_limits<double>::infinity();
  c.max12 = c.max13 = c.max23 = lo;
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    if (!(p.f[i] > 0)) continue;
    c.r.push_back(p.r[i]);
    c.k12.push_back(-p.k[i]);
    c.k23.push_back(-p.k[i]);
    c.k13.push_back(-(p.k[i] + p.f[i] / p.fp[i] * p.kp[i]));
    c.max12 = std::max(c.max12, c.k12.back());
    c.max13 = std::max(c.max13, c.k13.back());
    c.max23 = std::max(c.max23, c.k23.back());
  }
  return c;
}

double curvature_max(const TubeProfile& p) {
  const auto m = kernels::curvature_max(p.k.data(), p.kp.data(), p.f.data(), p.fp.data(), p.r.size());
  return std::max({m.k12, m.k13, m.k23});
}

ProfileCheck check_profile(const TubeProfile& p) {
  ProfileCheck c;
  const double l1 = p.params.l1;
  const std::size_t n = p.r.size();
  c.initial_ok = n >= 2 && p.r.back() == 0.0 && std::fabs(p.f.back() - l1) <= 1e-12 * l1 &&
                 std::fabs(p.fp.back() - l1) <= 1e-12 * l1 &&
                 (p.g.empty() || std::fabs(p.g.back() - p.params.l2) <= 1e-12 * std::max(1.0, p.params.l2));
  c.fp_positive = std::all_of(p.fp.begin(), p.fp.end(), [](double v) { return v > 0; });
  c.r0_bound = p.r0 < std::min(-0.5 * p.params.eps, -1.0);
  c.f_increasing = true;
  for (std::size_t i = 1; i < n; ++i) c.f_increasing = c.f_increasing && p.f[i] > p.f[i - 1] && p.r[i] > p.r[i - 1];
  c.root_ok = std::fabs(p.f.front()) <= 1e-10 * l1;
  const auto res =
      kernels::ode_residuals({p.r.data(), p.f.data(), p.fp.data(), p.lng.data(), p.k.data(), n, 0.5 * p.delta / 50});
  c.residual_f = res.f;
  c.residual_fp = res.fp;
  c.residual_lng = res.lng;
  const double d2 = p.delta * p.delta;
  c.residuals_ok = res.f <= 10 * d2 * l1 && res.fp <= 10 * d2 * l1 && res.lng <= 10 * d2;
  return c;
}

RichardsonReport richardson(double t, double eps, double l1, double l2, const TubeOptions& opts) {
  TubeOptions half = opts;
  half.delta *= 0.5;
  half.band_ratio *= 0.5;
  const TubeProfile a = integrate_tube(t, eps, l1, l2, opts);
  const TubeProfile b = integrate_tube(t, eps, l1, l2, half);
  auto rel = [](double x, double y) { return std::fabs(x - y) / std::max(std::fabs(y), 1e-300); };
  RichardsonReport r;
  r.r0_rel = rel(a.r0, b.r0);
  r.m_rel = rel(a.m, b.m);
  const double va = tube_volume(a), vb = tube_volume(b);
  r.volume_rel = l2 == 0 ? 0.0 : rel(va, vb);
  r.ok = r.r0_rel <= 1e-6 && r.m_rel <= 1e-6 && r.volume_rel <= 1e-6;
  return r;
}

EpsilonSolve solve_epsilon(double t, double l1, const TubeOptions& opts) {
  check_t(t);
  if (!(l1 > kTwoPi)) throw HypothesisError("l1 must exceed 2 pi");
  const double hl = h(l1);
  if (!(t < hl)) throw HypothesisError("t must be below h(l1) = " + std::to_string(hl));
  EpsilonSolve s;
  s.lo = 0;
  s.hi = 2 * std::log(l1 / kTwoPi);
  auto m_of = [&](double e) { return cone_angle(t, e, l1, opts.shoot_band_steps); };
  const double m_lo = m_of(s.lo), m_hi = m_of(s.hi);
  if (!(m_lo > kTwoPi) || !(m_hi < kTwoPi))
    throw NumericError("cone angle does not bracket 2 pi on [0, 2 ln(l1 / 2 pi)]");
  double lo = s.lo, hi = s.hi, best = 0, best_m = m_lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double m = m_of(mid);
    ++s.iterations;
    if (std::fabs(m - kTwoPi) < std::fabs(best_m - kTwoPi)) best = mid, best_m = m;
    (m > kTwoPi ? lo : hi) = mid;
    if (hi - lo <= opts.bisect_tol * std::max(hi, 1e-300) || m == kTwoPi) break;
  }
  s.eps = best;
  s.m = best_m;
  if (!(std::fabs(s.m - kTwoPi) <= 1e-8 * kTwoPi)) throw NumericError("bisection did not reach 2 pi");
  return s;
}

BuiltTube build_tube(double l1, double l2, double zeta, double theta, const TubeOptions& opts) {
  if (!(l1 > kTwoPi)) throw HypothesisError("meridian length must exceed 2 pi");
  if (!(zeta > 0 && zeta < 1)) throw InputError("zeta must lie in (0,1)");
  if (!(l2 >= 0)) throw InputError("l2 must be nonnegative");
  if (!(theta >= 0 && theta < 1)) throw InputError("theta must lie in [0,1)");
  const double hl = h(l1);
  const double target = 0.5 * zeta * l1 * l2;
  for (int j = 1; j <= 40; ++j) {
    const double t = hl * (1 - std::ldexp(1.0, -j) * (1 - zeta));
    const EpsilonSolve es = solve_epsilon(t, l1, opts);
    const FSolution sol(t, es.eps, l1, opts.shoot_band_steps);
    if (l2 * sol.volume_per_l2() < target) continue;
    BuiltTube b;
    b.profile = integrate_tube(t, es.eps, l1, l2, opts);
    b.profile.params.zeta = zeta;
    b.profile.params.theta = theta;
    TubeCertificate& c = b.certificate;
    c.l1 = l1;
    c.l2 = l2;
    c.zeta = zeta;
    c.theta = theta;
    c.t = t;
    c.eps = es.eps;
    c.cone_angle = es.m;
    c.r0 = b.profile.r0;
    c.volume = tube_volume(b.profile);
    c.volume_target = target;
    c.curvature_max = curvature_max(b.profile);
    c.curvature_bound = -zeta * hl;
    c.line_search_steps = j;
    c.volume_ok = c.volume >= target;
    c.curvature_ok = c.curvature_max <= c.curvature_bound + 1e-9;
    c.note = "eps(t) certified by a sign change of m - 2 pi and bisection; uniqueness rests on monotonicity";
    return b;
  }
  throw NumericError("line search exhausted without reaching the volume target");
}

MetricBound manifold_metric_bound(double vol_m, const std::vector<double>& cusp_volumes, double lmin, double zeta) {
  if (!(lmin > kTwoPi)) throw HypothesisError("minimal slope length must exceed 2 pi");
  if (!(zeta > 0 && zeta <= 1)) throw InputError("zeta must lie in (0,1]");
  if (!(vol_m > 0)) throw InputError("vol(M) must be positive");
  const double hh = h(lmin);
  double cusps = 0;
  for (double c : cusp_volumes) {
    if (!(c >= 0)) throw InputError("cusp volumes must be nonnegative");
    cusps += c;
  }
  return {std::pow(zeta, 2.5) * std::pow(hh, 1.5) * vol_m, std::pow(hh, 1.5) * vol_m,
          std::pow(zeta * hh, 1.5) * (vol_m - (1 - zeta) * cusps)};
}

}  // namespace twistvol
