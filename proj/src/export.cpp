#include "twistvol/export.hpp"

#include <cmath>

namespace twistvol {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const LinkDiagram& d) {
  Json j;
  j["pd"] = d.to_pd();
  j["crossings"] = d.crossing_count();
  j["components"] = d.component_count();
  j["freeLoops"] = d.free_loop_count();
  j["connected"] = d.connected();
  j["writhe"] = writhe(d);
  j["signs"] = d.signs();
  j["alternating"] = is_alternating(d);
  Json arcs = Json::array();
  for (const auto& a : d.arcs()) {
    const Slot tail = a.ends[1 - a.head], head = a.ends[a.head];
    arcs.push_back({{"label", a.label},
                    {"component", a.component + 1},
                    {"from", {tail.crossing + 1, tail.position}},
                    {"to", {head.crossing + 1, head.position}}});
  }
  j["arcs"] = std::move(arcs);
  return j;
}

Json to_json(const LinkDiagram& d, const TwistDecomposition& t) {
  Json j;
  j["tw"] = t.tw();
  Json regions = Json::array();
  for (const auto& r : t.regions) {
    Json cs = Json::array();
    for (int x : r.crossings) cs.push_back(x + 1);
    regions.push_back({{"crossings", cs}, {"size", r.size()}, {"cyclic", r.cyclic}});
  }
  j["regions"] = std::move(regions);
  j["componentRegionCounts"] = component_region_counts(d, t);
  Json diag = Json::array();
  for (const auto& a : validate_twist_alternation(d, t)) diag.push_back(a.message);
  j["alternationWarnings"] = std::move(diag);
  return j;
}

Json to_json(const StateGraph& g) {
  Json j;
  j["kind"] = to_string(g.kind);
  j["vertices"] = g.vertices;
  j["edges"] = g.edge_count();
  j["reducedEdges"] = g.reduced_edge_count();
  j["hasLoop"] = g.has_loop();
  Json e = Json::array();
  for (const auto& [a, b] : g.edges) e.push_back({a, b});
  j["edgeList"] = std::move(e);
  return j;
}

Json to_json(const Geography& g) {
  Json j;
  j["pVertices"] = g.p_vertices;
  j["redEdges"] = g.red_edges;
  j["blackEdges"] = g.black_edges;
  j["phiComponents"] = g.phi_components;
  j["phiSizes"] = g.phi_sizes;
  j["chi"] = g.chi;
  j["tw"] = g.tw;
  j["gated"] = g.gated();
  j["countryCount"] = g.country_count();
  j["countryBound"] = g.country_bound();
  Json cs = Json::array();
  for (const auto& c : g.countries)
    cs.push_back({{"provinces", c.provinces},
                  {"tw", c.tw()},
                  {"chi", c.chi()},
                  {"eShortReduced", c.e_short_reduced},
                  {"shortEdgeBound", c.short_edge_bound()}});
  j["countries"] = std::move(cs);
  j["warnings"] = g.warnings;
  return j;
}

Json to_json(const LaurentPoly& p, int step) {
  Json j;
  j["variable"] = p.variable() == Variable::A ? "A" : "q";
  Json terms = Json::array();
  for (const auto& [e, c] : p.descending()) terms.push_back({e, c});
  j["terms"] = std::move(terms);
  j["text"] = p.to_string();
  if (!p.is_zero()) {
    const CoefficientSummary s = summarize(p, step);
    j["alpha"] = s.alpha;
    j["beta"] = s.beta;
    j["betaPrime"] = s.beta_prime;
    j["alphaPrime"] = s.alpha_prime;
  }
  return j;
}

Json to_json(const StoimenowReport& r) {
  return {{"aAdequate", r.a_adequate},
          {"bAdequate", r.b_adequate},
          {"absBeta", r.abs_beta},
          {"absBetaPrime", r.abs_beta_prime},
          {"eA", r.e_a},
          {"eB", r.e_b},
          {"vA", r.v_a},
          {"vB", r.v_b},
          {"betaMatches", r.beta_matches},
          {"betaPrimeMatches", r.beta_prime_matches},
          {"sumMatches", r.sum_matches},
          {"alphaUnit", r.alpha_unit},
          {"alphaPrimeUnit", r.alpha_prime_unit},
          {"jonesAgrees", r.jones_agrees}};
}

Json to_json(const CoefficientBoundsReport& r) {
  return {{"betaSum", r.beta_sum},         {"tw", r.tw},
          {"adequate", r.adequate},        {"upperGated", r.upper_gated},
          {"upperHolds", r.upper_holds},   {"lowerGated", r.lower_gated},
          {"lowerHolds", r.lower_holds},   {"note", r.note}};
}

Json to_json(const VolumeBound& b) {
  Json j;
  j["kind"] = b.kind;
  j["lower"] = optional_number(b.lower);
  j["upper"] = optional_number(b.upper);
  j["strictUpper"] = b.strict_upper;
  Json hyp = Json::object();
  for (const auto& [name, ok] : b.hypotheses) hyp[name] = ok;
  j["hypotheses"] = std::move(hyp);
  Json in = Json::object();
  for (const auto& [name, v] : b.inputs) in[name] = v;
  j["inputs"] = std::move(in);
  j["notes"] = b.notes;
  return j;
}

Json to_json(const SlopeLengthEstimate& s) {
  return {{"regionBounds", s.region_bounds},
          {"componentBounds", s.component_bounds},
          {"lmin", s.lmin},
          {"lminSource", s.lmin_source}};
}

Json to_json(const NzComparison& n) {
  return {{"density", n.density},       {"deltaNZ", n.delta_nz},     {"deltaBound", n.delta_bound},
          {"ratio", n.ratio},           {"densityOk", n.density_ok}, {"warnings", n.warnings}};
}

Json to_json(const CensusTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"id", r.id},
                    {"slopeLength", r.slope_len},
                    {"actualRatio", r.actual_ratio},
                    {"boundRatio", r.bound_ratio},
                    {"factor", r.factor},
                    {"nzFactor", optional_number(r.nz_factor)}});
  return {{"rows", rows},
          {"skippedShort", t.skipped_short},
          {"rejected", t.rejected},
          {"binEdges", t.bin_edges},
          {"histogram", t.histogram}};
}

Json to_json(const TubeCertificate& c) {
  return {{"l1", c.l1},
          {"l2", c.l2},
          {"zeta", c.zeta},
          {"theta", c.theta},
          {"t", c.t},
          {"eps", c.eps},
          {"coneAngle", c.cone_angle},
          {"r0", c.r0},
          {"volume", c.volume},
          {"volumeTarget", c.volume_target},
          {"curvatureMax", c.curvature_max},
          {"curvatureBound", c.curvature_bound},
          {"lineSearchSteps", c.line_search_steps},
          {"volumeOk", c.volume_ok},
          {"curvatureOk", c.curvature_ok},
          {"note", c.note}};
}

Json to_json(const TubeProfile& p, std::size_t stride) {
  if (stride == 0) stride = 1;
  Json j;
  j["t"] = p.params.t;
  j["eps"] = p.params.eps;
  j["l1"] = p.params.l1;
  j["l2"] = p.params.l2;
  j["r0"] = p.r0;
  j["m"] = p.m;
  j["delta"] = p.delta;
  j["samples"] = p.size();
  Json cols = Json::array({"r", "f", "fp", "g", "k"});
  Json data = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i % stride != 0 && i + 1 != p.size()) continue;
    data.push_back({p.r[i], p.f[i], p.fp[i], p.g.empty() ? 0.0 : p.g[i], p.k[i]});
  }
  j["columns"] = std::move(cols);
  j["data"] = std::move(data);
  return j;
}

}  // namespace twistvol
