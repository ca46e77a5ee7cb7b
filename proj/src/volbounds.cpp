#include "twistvol/volbounds.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "twistvol/errors.hpp"

namespace twistvol {

namespace {

constexpr double kTwoPi = 2 * kPi;

double retention(double lmin) { return std::pow(h(lmin), 1.5); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

double h(double x) {
  if (!(x > 0)) throw InputError("slope length must be positive");
  if (std::isinf(x)) return 1.0;
  const double r = kTwoPi / x;
  return 1.0 - r * r;
}

bool VolumeBound::hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const auto& p) { return p.second; });
}

VolumeBound filling_lower_bound(double vol_m, double lmin) {
  if (!(vol_m > 0)) throw InputError("vol(M) must be positive");
  if (!(lmin > kTwoPi)) throw HypothesisError("minimal slope length " + fmt(lmin) + " is not greater than 2 pi");
  VolumeBound b;
  b.kind = "filling";
  b.inputs = {{"vol_M", vol_m}, {"lmin", lmin}};
  b.hypotheses = {{"lmin > 2 pi", true}};
  b.lower = retention(lmin) * vol_m;
  b.upper = vol_m;
  b.strict_upper = true;
  return b;
}

VolumeBound augmented_lower(int tw, bool two_bridge) {
  if (tw < 2) throw HypothesisError("augmented link bound needs at least two twist regions");
  VolumeBound b;
  b.kind = "augmented";
  b.inputs = {{"tw", static_cast<double>(tw)}};
  b.hypotheses = {{"tw >= 2", true}};
  b.lower = 2 * kV8 * (tw - 1);
  if (two_bridge) {
    b.upper = b.lower;
    b.notes.push_back("two-bridge: the bound is an equality");
  }
  return b;
}

SlopeLengthEstimate slope_lengths(const std::vector<int>& region_sizes, const std::vector<int>& component_counts,
                                  const FillingSelection& filling) {
  if (region_sizes.size() < 2) throw HypothesisError("slope estimates need at least two twist regions");
  SlopeLengthEstimate s;
  s.lmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < region_sizes.size(); ++i) {
    const int a = region_sizes[i];
    if (a < 1) throw InputError("twist region sizes must be positive");
    const double l = std::sqrt(static_cast<double>(a) * a + 1.0);
    s.region_bounds.push_back(l);
    if (filling.crossing_circles && l < s.lmin) {
      s.lmin = l;
      s.lmin_source = "region " + std::to_string(i);
    }
  }
  for (int c : component_counts) {
    if (c < 1) throw InputError("component region counts must be positive");
    s.component_bounds.push_back(c);
  }
  for (int j : filling.components) {
    if (j < 0 || j >= static_cast<int>(component_counts.size())) throw InputError("no such component");
    const double l = component_counts[j];
    if (l < s.lmin) {
      s.lmin = l;
      s.lmin_source = "component " + std::to_string(j);
    }
  }
  return s;
}

VolumeBound link_volume_bounds(int tw, int min_crossings) {
  if (tw < 2) throw HypothesisError("link volume bounds need tw >= 2");
  if (min_crossings < 1) throw InputError("min_crossings must be positive");
  const double l = std::sqrt(static_cast<double>(min_crossings) * min_crossings + 1.0);
  if (!(l > kTwoPi))
    throw HypothesisError("sqrt(" + std::to_string(min_crossings * min_crossings + 1) + ") is not greater than 2 pi");
  VolumeBound b;
  b.kind = "link";
  b.inputs = {{"tw", static_cast<double>(tw)}, {"min_crossings", static_cast<double>(min_crossings)}};
  b.hypotheses = {{"tw >= 2", true}, {"sqrt(a^2+1) > 2 pi", true}};
  b.lower = retention(l) * 2 * kV8 * (tw - 1);
  b.upper = 10 * kV3 * (tw - 1);
  b.strict_upper = true;
  return b;
}

VolumeBound surgered_link_bounds(int tw, std::optional<int> min_crossings, const std::vector<int>& component_counts) {
  if (tw < 2) throw HypothesisError("surgered link bounds need tw >= 2");
  VolumeBound b;
  b.kind = "surgered";
  b.inputs = {{"tw", static_cast<double>(tw)}};
  if (min_crossings) b.inputs.emplace_back("min_crossings", *min_crossings);
  b.hypotheses.emplace_back("every twist region has >= 7 crossings", !min_crossings || *min_crossings >= 7);
  if (!min_crossings) b.notes.push_back("region sizes not given: assumed >= 7");
  for (std::size_t j = 0; j < component_counts.size(); ++j)
    b.hypotheses.emplace_back("component " + std::to_string(j) + " runs through >= 7 twist regions",
                              component_counts[j] >= 7);
  if (!b.hypotheses_hold()) return b;
  b.lower = retention(7.0) * 2 * kV8 * (tw - 1);
  b.upper = 10 * kV3 * (tw - 1);
  b.strict_upper = true;
  return b;
}

VolumeBound pq_surgery_bound(double vol_k, long long q) {
  if (!(vol_k > 0)) throw InputError("vol(K) must be positive");
  if (std::llabs(q) < 12) throw HypothesisError("|q| = " + std::to_string(std::llabs(q)) + " is below 12");
  VolumeBound b;
  b.kind = "pq_surgery";
  b.inputs = {{"vol_K", vol_k}, {"q", static_cast<double>(q)}};
  b.hypotheses = {{"|q| >= 12", true}};
  const double qq = static_cast<double>(q) * static_cast<double>(q);
  b.lower = std::pow(1.0 - 127.0 / qq, 1.5) * vol_k;
  b.upper = vol_k;
  b.strict_upper = true;
  b.notes.push_back("slope length estimate |q| * 3.35 / 6 = " + fmt(std::llabs(q) * 3.35 / 6.0));
  return b;
}

VolumeBound branched_cover_bounds(double vol_k, int p, bool improved) {
  if (!(vol_k > 0)) throw InputError("vol(K) must be positive");
  const int need = improved ? 6 : 7;
  if (p < need) throw HypothesisError("branching order " + std::to_string(p) + " below " + std::to_string(need));
  VolumeBound b;
  b.kind = improved ? "branched_cover_improved" : "branched_cover";
  b.inputs = {{"vol_K", vol_k}, {"p", static_cast<double>(p)}};
  b.hypotheses = {{"p >= " + std::to_string(need), true}};
  const double c = improved ? 2 * std::sqrt(2.0) * kPi * kPi : 4 * kPi * kPi;
  const double factor = std::pow(1.0 - c / (static_cast<double>(p) * p), 1.5);
  b.inputs.emplace_back("factor", factor);
  b.lower = factor * p * vol_k;
  b.upper = p * vol_k;
  b.strict_upper = true;
  if (improved) b.notes.push_back("assumes K is neither the figure-8 knot nor 5_2");
  return b;
}

NzComparison nz_comparison(double vol_m, double vol_c, double ell) {
  if (!(vol_m > 0) || !(vol_c > 0) || !(ell > 0)) throw InputError("volumes and slope length must be positive");
  NzComparison r;
  r.density = vol_c / vol_m;
  r.delta_nz = 2 * kPi * kPi * vol_c / (ell * ell);
  r.delta_bound = 6 * kPi * kPi * vol_m / (ell * ell);
  r.ratio = 3 * vol_m / vol_c;
  if (r.density > kMaxCuspDensity) {
    r.density_ok = false;
    r.warnings.push_back("cusp density " + fmt(r.density) + " exceeds 0.8533");
  }
  return r;
}

std::vector<CensusRow> read_census_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
  };
  auto number = [](const std::string& s, int line) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InputError("census line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
  };
  std::string line;
  int lineno = 0;
  std::map<std::string, int> col;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto head = split(line);
    for (int i = 0; i < static_cast<int>(head.size()); ++i) col[head[i]] = i;
    break;
  }
  for (const char* need : {"id", "vol", "vol_filled", "slope_len"})
    if (!col.count(need)) throw InputError(std::string("census header lacks column '") + need + "'");
  std::vector<CensusRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    auto cells = split(line);
    auto at = [&](const std::string& name) -> const std::string& {
      const int i = col.at(name);
      if (i >= static_cast<int>(cells.size())) throw InputError("census line " + std::to_string(lineno) + ": too few cells");
      return cells[i];
    };
    CensusRow r;
    r.id = at("id");
    r.vol = number(at("vol"), lineno);
    r.vol_filled = number(at("vol_filled"), lineno);
    r.slope_len = number(at("slope_len"), lineno);
    if (col.count("cusp_vol") && col.at("cusp_vol") < static_cast<int>(cells.size()) && !cells[col.at("cusp_vol")].empty())
      r.cusp_vol = number(cells[col.at("cusp_vol")], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

CensusTable census_compare(const std::vector<CensusRow>& rows, int bins) {
  CensusTable t;
  for (const auto& r : rows) {
    if (!(r.slope_len > kTwoPi)) {
      ++t.skipped_short;
      continue;
    }
    if (!(r.vol_filled < r.vol) || !(r.vol > 0)) {
      t.rejected.push_back(r.id);
      continue;
    }
    CensusEntry e;
    e.id = r.id;
    e.slope_len = r.slope_len;
    e.actual_ratio = r.vol_filled / r.vol;
    e.bound_ratio = retention(r.slope_len);
    e.factor = (r.vol - e.bound_ratio * r.vol) / (r.vol - r.vol_filled);
    if (r.cusp_vol && *r.cusp_vol > 0) e.nz_factor = 3 * r.vol / *r.cusp_vol;
    t.rows.push_back(std::move(e));
  }
  if (!t.rows.empty() && bins > 0) {
    double lo = t.rows[0].factor, hi = lo;
    for (const auto& e : t.rows) lo = std::min(lo, e.factor), hi = std::max(hi, e.factor);
    lo = std::floor(lo);
    hi = std::max(std::ceil(hi), lo + 1);
    t.histogram.assign(bins, 0);
    for (int i = 0; i <= bins; ++i) t.bin_edges.push_back(lo + (hi - lo) * i / bins);
    for (const auto& e : t.rows) {
      int k = static_cast<int>((e.factor - lo) / (hi - lo) * bins);
      ++t.histogram[std::clamp(k, 0, bins - 1)];
    }
  }
  return t;
}

void write_census_plot(std::ostream& out, const CensusTable& t) {
  out << "# slope_len actual_ratio bound_ratio factor\n";
  out.precision(10);
  for (const auto& e : t.rows)
    out << e.slope_len << ' ' << e.actual_ratio << ' ' << e.bound_ratio << ' ' << e.factor << '\n';
  out << "\n\n# bin_lo bin_hi count\n";
  for (std::size_t i = 0; i < t.histogram.size(); ++i)
    out << t.bin_edges[i] << ' ' << t.bin_edges[i + 1] << ' ' << t.histogram[i] << '\n';
}

VolumeBound diagrammatic_lower_bound(const LinkDiagram& d, const TwistDecomposition& t,
                                     const FillingSelection& filling) {
  if (t.tw() < 2) throw HypothesisError("diagrammatic bound needs tw >= 2 (tw = " + std::to_string(t.tw()) + ")");
  if (!is_prime(d)) throw HypothesisError("diagram is not prime");
  std::vector<int> sizes;
  for (const auto& r : t.regions) sizes.push_back(r.size());
  const SlopeLengthEstimate s = slope_lengths(sizes, component_region_counts(d, t), filling);
  if (filling.crossing_circles)
    for (std::size_t i = 0; i < s.region_bounds.size(); ++i)
      if (!(s.region_bounds[i] > kTwoPi))
        throw HypothesisError("twist region " + std::to_string(i) + " with " + std::to_string(sizes[i]) +
                              " crossings gives slope length " + fmt(s.region_bounds[i]) + " <= 2 pi");
  for (int j : filling.components)
    if (!(s.component_bounds[j] > kTwoPi))
      throw HypothesisError("component " + std::to_string(j) + " runs through only " +
                            std::to_string(static_cast<int>(s.component_bounds[j])) + " twist regions");
  if (!std::isfinite(s.lmin)) throw InputError("filling selection is empty");
  VolumeBound b;
  b.kind = "diagrammatic";
  b.inputs = {{"tw", static_cast<double>(t.tw())}, {"lmin", s.lmin}};
  b.hypotheses = {{"prime", true}, {"tw >= 2", true}, {"all slopes > 2 pi", true}};
  b.lower = retention(s.lmin) * 2 * kV8 * (t.tw() - 1);
  b.notes.push_back("lmin from " + s.lmin_source);
  b.notes.push_back("twist-reduced diagram assumed");
  return b;
}

}  // namespace twistvol
