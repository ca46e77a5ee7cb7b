#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistvol/diagram.hpp"

namespace twistvol {

inline constexpr double kPi = 3.14159265358979323846;
/// Regular ideal octahedron and tetrahedron volumes.
inline constexpr double kV8 = 3.663862376708876;
inline constexpr double kV3 = 1.014941606409653;
/// Largest possible cusp density.
inline constexpr double kMaxCuspDensity = 0.8533;

/// h(x) = 1 - (2 pi / x)^2, for x > 0 (x = +inf gives 1).
double h(double x);

struct VolumeBound {
  std::string kind;
  std::optional<double> lower, upper;
  bool strict_upper = false;
  std::vector<std::pair<std::string, bool>> hypotheses;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::string> notes;
  bool hypotheses_hold() const;
};

VolumeBound filling_lower_bound(double vol_m, double lmin);
VolumeBound augmented_lower(int tw, bool two_bridge = false);

struct FillingSelection {
  bool crossing_circles = true;
  std::vector<int> components;  // components of the link filled nontrivially
};

struct SlopeLengthEstimate {
  std::vector<double> region_bounds;     // sqrt(a_i^2 + 1)
  std::vector<double> component_bounds;  // n_j
  double lmin = 0;
  std::string lmin_source;
};

SlopeLengthEstimate slope_lengths(const std::vector<int>& region_sizes, const std::vector<int>& component_counts,
                                  const FillingSelection& filling = {});

VolumeBound link_volume_bounds(int tw, int min_crossings);
/// Hypotheses: every region has >= 7 crossings, every surgered component
/// runs through >= 7 twist regions. Bounds are withheld when a flag fails.
VolumeBound surgered_link_bounds(int tw, std::optional<int> min_crossings = std::nullopt,
                                 const std::vector<int>& component_counts = {});
VolumeBound pq_surgery_bound(double vol_k, long long q);
VolumeBound branched_cover_bounds(double vol_k, int p, bool improved);

struct NzComparison {
  double density = 0;
  double delta_nz = 0;     // 2 pi^2 vol_C / l^2
  double delta_bound = 0;  // 6 pi^2 vol_M / l^2
  double ratio = 0;        // 3 vol_M / vol_C
  bool density_ok = true;
  std::vector<std::string> warnings;
};

NzComparison nz_comparison(double vol_m, double vol_c, double ell);

struct CensusRow {
  std::string id;
  double vol = 0, vol_filled = 0, slope_len = 0;
  std::optional<double> cusp_vol;
};

std::vector<CensusRow> read_census_csv(std::istream& in);

struct CensusEntry {
  std::string id;
  double slope_len = 0;
  double actual_ratio = 0;  // vol(M(s)) / vol(M)
  double bound_ratio = 0;   // h(l)^(3/2)
  double factor = 0;        // predicted volume drop over actual drop
  std::optional<double> nz_factor;
};

struct CensusTable {
  std::vector<CensusEntry> rows;
  int skipped_short = 0;
  std::vector<std::string> rejected;  // vol(M(s)) >= vol(M)
  std::vector<double> bin_edges;
  std::vector<int> histogram;
};

CensusTable census_compare(const std::vector<CensusRow>& rows, int bins = 10);
void write_census_plot(std::ostream& out, const CensusTable& t);

/// h(l_min)^(3/2) 2 v8 (tw - 1) for a prime diagram, with the slope that
/// realizes l_min named in the notes.
VolumeBound diagrammatic_lower_bound(const LinkDiagram& d, const TwistDecomposition& t,
                                     const FillingSelection& filling = {});

}  // namespace twistvol
