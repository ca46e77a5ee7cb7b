#include "twistvol/tube_suites.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <thread>

#include "twistvol/volbounds.hpp"

namespace twistvol {

namespace {

constexpr std::size_t kSamples = 4001;

// phi = f_b - f_a with (a) the smaller parameter; r_lo = r0 of b.
MonotonicityCase compare(MonotonicityCase c, const FSolution& a, const FSolution& b, double strict_edge) {
  if (!a.has_root() || !b.has_root()) throw NumericError("root not found in monotonicity comparison");
  c.r_lo = b.r0();
  c.m1 = a.cone_angle();
  c.m2 = b.cone_angle();
  c.cone_angle_ok = c.m1 > c.m2;
  const double tol = 1e-7 * c.l1;
  c.min_phi = std::numeric_limits<double>::infinity();
  c.max_phip = -std::numeric_limits<double>::infinity();
  c.strict_ok = true;
  bool shape_ok = true;
  for (std::size_t j = 0; j < kSamples; ++j) {
    const double r = c.r_lo * (1.0 - static_cast<double>(j) / (kSamples - 1));
    const FPair fa = a.eval(r), fb = b.eval(r);
    const double phi = fb.f - fa.f, phip = fb.fp - fa.fp;
    c.min_phi = std::min(c.min_phi, phi);
    c.max_phip = std::max(c.max_phip, phip);
    shape_ok = shape_ok && phi >= -tol && phip <= tol;
    if (r <= strict_edge) {
      ++c.strict_samples;
      c.strict_ok = c.strict_ok && phi > 0 && phip < 0;
    }
    ++c.samples;
  }
  c.ok = shape_ok && c.strict_ok && c.cone_angle_ok && c.strict_samples > 0;
  return c;
}

}  // namespace

MonotonicityCase monotonicity_eps(double t, double eps1, double eps2, double l1, const TubeOptions& opts) {
  if (!(eps1 < eps2)) throw InputError("monotonicity_eps needs eps1 < eps2");
  MonotonicityCase c;
  c.kind = "eps";
  c.t1 = c.t2 = t;
  c.eps1 = eps1;
  c.eps2 = eps2;
  c.l1 = l1;
  const FSolution a(t, eps1, l1, opts.shoot_band_steps), b(t, eps2, l1, opts.shoot_band_steps);
  return compare(c, a, b, -std::max(eps2, 1e-3));
}

MonotonicityCase monotonicity_t(double t1, double t2, double eps, double l1, const TubeOptions& opts) {
  if (!(t1 < t2)) throw InputError("monotonicity_t needs t1 < t2");
  MonotonicityCase c;
  c.kind = "t";
  c.t1 = t1;
  c.t2 = t2;
  c.eps1 = c.eps2 = eps;
  c.l1 = l1;
  const FSolution a(t1, eps, l1, opts.shoot_band_steps), b(t2, eps, l1, opts.shoot_band_steps);
  return compare(c, a, b, -std::max(eps, 1e-3));
}

bool MonotonicityReport::ok() const {
  return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.ok; });
}

MonotonicityReport monotonicity_suite(double t1, double t2, double eps1, double eps2, double l1,
                                      const TubeOptions& opts) {
  MonotonicityReport r;
  r.cases.push_back(monotonicity_eps(t1, eps1, eps2, l1, opts));
  r.cases.push_back(monotonicity_eps(t2, eps1, eps2, l1, opts));
  r.cases.push_back(monotonicity_t(t1, t2, eps1, l1, opts));
  r.cases.push_back(monotonicity_t(t1, t2, eps2, l1, opts));
  return r;
}

InequalityHarness differential_inequality_harness(int trials, std::uint64_t seed, double tol) {
  InequalityHarness out;
  out.trials = trials;
  out.tol = tol;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double h = 1e-3;
  constexpr int kCells = 4000;  // [-4, 4] in steps of h
  for (int trial = 0; trial < trials; ++trial) {
    // piecewise-constant k and forcing with breakpoints on the grid
    const int pieces = 1 + static_cast<int>(unit(rng) * 8);
    std::vector<int> cuts{-kCells, kCells};
    for (int i = 1; i < pieces; ++i) cuts.push_back(static_cast<int>((2 * unit(rng) - 1) * kCells));
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> kv(cuts.size()), sv(cuts.size());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      kv[i] = unit(rng) < 0.15 ? 0.0 : unit(rng);
      sv[i] = unit(rng) < 0.4 ? 0.0 : unit(rng);
    }
    auto coeff = [&](double x, const std::vector<double>& v) {
      const double cell = x / h;
      const auto it = std::upper_bound(cuts.begin(), cuts.end(), static_cast<int>(std::floor(cell + 1e-9)));
      const std::size_t idx = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - cuts.begin() - 1, 0), v.size() - 1);
      return v[idx];
    };
    const double phi0 = unit(rng) < 0.2 ? 0.0 : unit(rng);
    // one RK4 step of (phi, phi') with k and s frozen at the cell midpoint
    auto step = [&](double& p, double& q, double x, double dx) {
      const double mid = x + 0.5 * dx;
      const double k = coeff(mid, kv), s = coeff(mid, sv);
      auto acc = [&](double u) { return k * u + s; };
      const double k1p = q, k1q = acc(p);
      const double k2p = q + 0.5 * dx * k1q, k2q = acc(p + 0.5 * dx * k1p);
      const double k3p = q + 0.5 * dx * k2q, k3q = acc(p + 0.5 * dx * k2p);
      const double k4p = q + dx * k3q, k4q = acc(p + dx * k3p);
      p += dx / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
      q += dx / 6 * (k1q + 2 * k2q + 2 * k3q + k4q);
    };
    bool bad = false;
    for (const double dir : {1.0, -1.0}) {
      double p = phi0, q = 0.0;
      for (int i = 0; i < kCells; ++i) {
        step(p, q, dir * i * h, dir * h);
        out.worst_phi = std::min(out.worst_phi, p);
        if (dir > 0) out.worst_phip_right = std::min(out.worst_phip_right, q);
        else out.worst_phip_left = std::max(out.worst_phip_left, q);
        bad = bad || p < -tol || (dir > 0 ? q < -tol : q > tol);
      }
    }
    if (bad) ++out.theorem_failures;
    // one-sided lemma on [0, 1]
    double p = unit(rng) < 0.2 ? 0.0 : unit(rng), q = unit(rng) < 0.3 ? 0.0 : unit(rng);
    bool lemma_bad = false;
    for (int i = 0; i < 1000; ++i) {
      step(p, q, i * h, h);
      const double acc = coeff((i + 1) * h - 0.5 * h, kv) * p + coeff((i + 1) * h - 0.5 * h, sv);
      lemma_bad = lemma_bad || p < -tol || q < -tol || acc < -tol;
    }
    if (lemma_bad) ++out.lemma_failures;
  }
  return out;
}

RegularityReport regularity_suite(double t_lim, const std::vector<std::pair<double, double>>& sequence, double l1,
                                  const TubeOptions& opts) {
  if (sequence.empty()) throw InputError("regularity_suite needs a nonempty sequence");
  RegularityReport rep;
  rep.t_lim = t_lim;
  rep.r0_lim = r0_closed(t_lim);
  rep.c1_positive = rep.c2_negative = rep.eps_decreasing = true;
  int index = 0;
  for (const auto& [t, eps] : sequence) {
    const FSolution s(t, eps, l1, opts.shoot_band_steps);
    RegularityStep st;
    st.index = ++index;
    st.t = t;
    st.eps = eps;
    st.c1 = s.c1();
    st.c2 = s.c2();
    st.r0 = s.r0();
    for (std::size_t j = 0; j < kSamples; ++j) {
      const double r = rep.r0_lim * (1.0 - static_cast<double>(j) / (kSamples - 1));
      const FPair a = s.eval(r), b = f0_closed(t_lim, l1, r);
      const double ga = std::exp(s.log_g(r)), gb = g0_closed(t_lim, 1.0, r, rep.r0_lim);
      st.sup_f = std::max(st.sup_f, std::fabs(a.f - b.f) / l1);
      st.sup_fp = std::max(st.sup_fp, std::fabs(a.fp - b.fp) / l1);
      st.sup_g = std::max(st.sup_g, std::fabs(ga - gb));  // relative to l2
    }
    rep.c1_positive = rep.c1_positive && st.c1 > 0;
    rep.c2_negative = rep.c2_negative && st.c2 < 0;
    if (!rep.steps.empty()) rep.eps_decreasing = rep.eps_decreasing && eps < rep.steps.back().eps;
    rep.steps.push_back(st);
  }
  rep.sup_decreasing = true;
  rep.r0_converging = true;
  for (std::size_t i = 3; i < rep.steps.size(); ++i) {
    const RegularityStep &a = rep.steps[i - 1], &b = rep.steps[i];
    rep.sup_decreasing = rep.sup_decreasing && b.sup_f < a.sup_f && b.sup_fp < a.sup_fp && b.sup_g < a.sup_g;
    rep.r0_converging =
        rep.r0_converging && std::fabs(b.r0 - rep.r0_lim) < std::fabs(a.r0 - rep.r0_lim);
  }
  return rep;
}

RegularityReport regularity_sequence(double l1, int n, const TubeOptions& opts) {
  const double hl = h(l1);
  std::vector<std::pair<double, double>> seq;
  for (int i = 1; i <= n; ++i) {
    const double t = hl * (1 - std::ldexp(1.0, -i));
    seq.emplace_back(t, solve_epsilon(t, l1, opts).eps);
  }
  return regularity_suite(hl, seq, l1, opts);
}

bool PropertyPoint::ok() const {
  return c2 < 0 && r0 < std::min(-0.5 * eps, -1.0) && profile.ok() && eps_case.ok && t_case.ok;
}

bool PropertyRun::ok() const {
  return !points.empty() && c2_negative && r0_below && harness.ok() &&
         std::all_of(points.begin(), points.end(), [](const auto& p) { return p.ok(); });
}

PropertyRun random_property_suite(int points, std::uint64_t seed, const TubeOptions& opts) {
  struct Draw {
    double t, eps, l1, t2, eps2;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Draw> draws;
  for (int i = 0; i < points; ++i) {
    Draw d;
    d.t = 0.05 + 0.9 * unit(rng);
    d.eps = i % 10 == 0 ? 1e-6 : 1.5 * unit(rng);
    d.l1 = 2 * kPi + 0.05 + 14 * unit(rng);
    d.t2 = d.t + (0.01 + 0.3 * unit(rng)) * (1 - d.t);
    d.eps2 = d.eps + 0.01 + 0.5 * unit(rng);
    draws.push_back(d);
  }
  auto run = [&](const Draw& d) {
    PropertyPoint p;
    p.t = d.t;
    p.eps = d.eps;
    p.l1 = d.l1;
    const FSolution s(d.t, d.eps, d.l1, opts.shoot_band_steps);
    p.c2 = s.c2();
    const TubeProfile prof = integrate_tube(d.t, d.eps, d.l1, 1.0, opts);
    p.r0 = prof.r0;
    p.profile = check_profile(prof);
    p.eps_case = monotonicity_eps(d.t, d.eps, d.eps2, d.l1, opts);
    p.t_case = monotonicity_t(d.t, d.t2, d.eps, d.l1, opts);
    return p;
  };
  PropertyRun out;
  out.points.resize(draws.size());
  const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < draws.size(); i += workers) out.points[i] = run(draws[i]);
    }));
  for (auto& j : jobs) j.get();
  out.harness = differential_inequality_harness(200, seed ^ 0x5eedULL);
  out.c2_negative = std::all_of(out.points.begin(), out.points.end(), [](const auto& p) { return p.c2 < 0; });
  out.r0_below = std::all_of(out.points.begin(), out.points.end(),
                             [](const auto& p) { return p.r0 < std::min(-0.5 * p.eps, -1.0); });
  return out;
}

}  // namespace twistvol
