#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twistvol/acceptance.hpp"
#include "twistvol/bracket.hpp"
#include "twistvol/corpus.hpp"
#include "twistvol/errors.hpp"
#include "twistvol/export.hpp"
#include "twistvol/kernels.hpp"
#include "twistvol/tube.hpp"
#include "twistvol/tube_suites.hpp"
#include "twistvol/volbounds.hpp"

using namespace twistvol;

namespace {

struct RunConfig {
  std::string format = "json";
  int crossing_limit = 24;
  unsigned threads = 0;
  bool allow_split = false;
  double delta = 0, root_tol = 0, bisect_tol = 0;
  std::uint64_t seed = 20240611;
};

LinkDiagram load_diagram(const std::string& input, const RunConfig& cfg) {
  const ParseOptions opts{cfg.allow_split};
  if (input.rfind("corpus:", 0) == 0) return corpus_entry(input.substr(7)).diagram;
  std::string text;
  if (input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(input);
    if (!in) throw InputError("cannot open '" + input + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return LinkDiagram::parse(text, opts);
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    for (auto& c : s)
      if (c == '\n') c = ' ';
    out << prefix << ": " << s << '\n';
  } else {
    out << prefix << ": " << j.dump() << '\n';
  }
}

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

bool is_table(const Json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const Json& r) { return r.is_object(); });
}

// A table is the top-level array of objects or the first such member; anything
// else becomes key,value rows.
void emit_csv(const Json& j, std::ostream& out) {
  const Json* table = is_table(j) ? &j : nullptr;
  if (!table && j.is_object())
    for (auto it = j.begin(); it != j.end() && !table; ++it)
      if (is_table(it.value())) table = &it.value();
  if (!table) {
    std::ostringstream flat;
    flatten(j, "", flat);
    out << "key,value\n";
    std::string line;
    std::istringstream in(flat.str());
    while (std::getline(in, line)) {
      const auto cut = line.find(": ");
      out << csv_cell(line.substr(0, cut)) << ',' << csv_cell(line.substr(cut + 2)) << '\n';
    }
    return;
  }
  std::vector<std::string> cols;
  for (auto it = table->front().begin(); it != table->front().end(); ++it) cols.push_back(it.key());
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& row : *table) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "");
    out << '\n';
  }
}

void emit(const Json& j, const RunConfig& cfg) {
  if (cfg.format == "csv")
    emit_csv(j, std::cout);
  else if (cfg.format == "text")
    flatten(j, "", std::cout);
  else
    std::cout << j.dump(2) << '\n';
}

TubeOptions tube_options(const RunConfig& cfg) {
  TubeOptions o = tube_options_from_env();
  if (cfg.delta > 0) o.delta = cfg.delta;
  if (cfg.root_tol > 0) o.root_tol = cfg.root_tol;
  if (cfg.bisect_tol > 0) o.bisect_tol = cfg.bisect_tol;
  return o;
}

BracketOptions bracket_options(const RunConfig& cfg) { return {cfg.crossing_limit, cfg.threads}; }

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad integer list '" + s + "'");
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad number list '" + s + "'");
    }
  }
  return out;
}

Json jones_json(const LinkDiagram& d, const RunConfig& cfg) {
  const LaurentPoly b = kauffman_bracket(d, bracket_options(cfg));
  const JonesResult j = jones_from_bracket(b, writhe(d));
  Json out;
  out["writhe"] = j.writhe;
  out["jones"] = to_json(j.poly, 2);
  out["jones"]["t"] = "q^2";
  out["betaSum"] = std::llabs(j.summary.beta) + std::llabs(j.summary.beta_prime);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistvol: twist regions, Jones coefficients, filling volume bounds, negatively curved tubes"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--crossing-limit", cfg.crossing_limit, "Largest diagram for bracket computations")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "Worker threads for state sums (0: all cores)");
  app.add_flag("--allow-split", cfg.allow_split, "Accept disconnected diagrams");
  app.add_option("--delta", cfg.delta, "RK4 step for tube integration")->check(CLI::PositiveNumber);
  app.add_option("--root-tol", cfg.root_tol, "Root polish tolerance")->check(CLI::PositiveNumber);
  app.add_option("--bisect-tol", cfg.bisect_tol, "Relative bracket width for the eps bisection")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized suites");

  std::string input;
  auto diagram_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("input", input, "PD file, '-' for stdin, or corpus:NAME")->required();
    return c;
  };
  auto* parse = diagram_cmd("parse", "Parse a PD code and report its structure");
  auto* twist = diagram_cmd("twist", "Twist-region decomposition");
  auto* adequacy = diagram_cmd("adequacy", "A/B state graphs and adequacy");
  auto* bracket = diagram_cmd("bracket", "Kauffman bracket");
  std::string method = "state";
  bracket->add_option("--method", method, "state, skein or both")->check(CLI::IsMember({"state", "skein", "both"}));
  auto* jones_cmd = diagram_cmd("jones", "Jones polynomial and |beta| + |beta'|");
  auto* coeffs = diagram_cmd("coeffs", "Coefficient identity and twist-number bounds");
  auto* geo = diagram_cmd("geography", "Turaev cross-check, classification and geography");

  auto* bounds = app.add_subcommand("bounds", "Volume bounds");
  bounds->require_subcommand(1);
  double vol = 0, lmin = 0, vol_c = 0, ell = 0, zeta = 0;
  int tw = 0, min_crossings = 0, p = 0;
  long long q = 0;
  bool two_bridge = false, improved = false, no_circles = false;
  std::string counts, components, cusps;
  auto* b_fill = bounds->add_subcommand("filling", "h(lmin)^(3/2) vol(M) < vol(M(s)) < vol(M)");
  b_fill->add_option("--vol", vol)->required();
  b_fill->add_option("--lmin", lmin)->required();
  auto* b_aug = bounds->add_subcommand("augmented", "Augmented link volume");
  b_aug->add_option("--tw", tw)->required();
  b_aug->add_flag("--two-bridge", two_bridge);
  auto* b_link = bounds->add_subcommand("link", "Twist-number bounds for links");
  b_link->add_option("--tw", tw)->required();
  b_link->add_option("--min-crossings", min_crossings)->required();
  auto* b_surg = bounds->add_subcommand("surgered", "Bounds for fillings of the link");
  b_surg->add_option("--tw", tw)->required();
  b_surg->add_option("--min-crossings", min_crossings);
  b_surg->add_option("--component-counts", counts, "Twist regions met by each surgered component, comma separated");
  auto* b_pq = bounds->add_subcommand("pq", "Filling bound for large |q|");
  b_pq->add_option("--vol", vol)->required();
  b_pq->add_option("--q", q)->required();
  auto* b_br = bounds->add_subcommand("branched", "Branched cover bounds");
  b_br->add_option("--vol", vol)->required();
  b_br->add_option("--p", p)->required();
  b_br->add_flag("--improved", improved);
  auto* b_nz = bounds->add_subcommand("nz", "Compare with the asymptotic volume change");
  b_nz->add_option("--vol-m", vol)->required();
  b_nz->add_option("--vol-c", vol_c)->required();
  b_nz->add_option("--ell", ell)->required();
  auto* b_diag = bounds->add_subcommand("diagram", "Lower bound from a diagram");
  b_diag->add_option("input", input)->required();
  b_diag->add_option("--components", components, "1-based link components filled nontrivially");
  b_diag->add_flag("--no-crossing-circles", no_circles);
  auto* b_metric = bounds->add_subcommand("metric", "Volume bound from the rescaled tube metric");
  b_metric->add_option("--vol", vol)->required();
  b_metric->add_option("--lmin", lmin)->required();
  b_metric->add_option("--zeta", zeta)->required();
  b_metric->add_option("--cusp-volumes", cusps);

  auto* tube = app.add_subcommand("tube", "Negatively curved solid tube");
  tube->require_subcommand(1);
  double l1 = 0, l2 = 0, theta = 0, t = 0, eps = 0;
  int points = 100;
  std::size_t stride = 0;
  std::string profile_out;
  auto* t_build = tube->add_subcommand("build", "Build a tube and emit its certificate");
  t_build->add_option("--l1", l1)->required();
  t_build->add_option("--l2", l2)->required();
  t_build->add_option("--zeta", zeta)->required();
  t_build->add_option("--theta", theta);
  t_build->add_option("--profile-out", profile_out, "Write the sampled profile as JSON");
  t_build->add_option("--stride", stride, "Keep every n-th sample in the profile");
  double tmin = 0, tmax = 0;
  int n = 10;
  auto* t_sweep = tube->add_subcommand("sweep", "eps(t), cone angle and volume on a t grid below h(l1)");
  t_sweep->add_option("--l1", l1)->required();
  t_sweep->add_option("--l2", l2)->default_val(1.0);
  t_sweep->add_option("--tmin", tmin, "Default h(l1) / 2");
  t_sweep->add_option("--tmax", tmax, "Default 0.999 h(l1)");
  t_sweep->add_option("--n", n, "Grid points")->check(CLI::Range(1, 10000));
  auto* t_verify = tube->add_subcommand("verify", "Profile checks, step halving and the ODE property suites");
  t_verify->add_option("--t", t, "Default h(l1) / 2");
  t_verify->add_option("--eps", eps, "Default eps(t) from the cone-angle solve");
  t_verify->add_option("--l1", l1)->default_val(8.0);
  t_verify->add_option("--l2", l2)->default_val(5.0);
  t_verify->add_option("--points", points, "Randomized property points")->check(CLI::NonNegativeNumber);

  auto* census = app.add_subcommand("census", "Compare the filling bound with census data");
  std::string plot;
  int bins = 10;
  census->add_option("csv", input, "CSV with id, vol, vol_filled, slope_len[, cusp_vol]")->required();
  census->add_option("--plot", plot, "Write a gnuplot data file");
  census->add_option("--bins", bins)->check(CLI::PositiveNumber);

  auto* corpus_cmd = app.add_subcommand("corpus", "List the built-in diagrams or export them");
  std::string export_dir;
  corpus_cmd->add_option("--export", export_dir, "Write NAME.pd files into this directory");

  auto* verify = app.add_subcommand("verify-all", "Run the acceptance suite");
  std::string only;
  verify->add_option("--only", only, "Comma separated criterion ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (parse->parsed()) {
      const LinkDiagram d = load_diagram(input, cfg);
      Json j = to_json(d);
      j["faces"] = faces(d).size();
      j["prime"] = is_prime(d);
      emit(j, cfg);
    } else if (twist->parsed()) {
      const LinkDiagram d = load_diagram(input, cfg);
      emit(to_json(d, twist_regions(d)), cfg);
    } else if (adequacy->parsed()) {
      const LinkDiagram d = load_diagram(input, cfg);
      const Adequacy a = is_adequate(d);
      Json j;
      j["aAdequate"] = a.a_adequate;
      j["bAdequate"] = a.b_adequate;
      j["adequate"] = a.adequate();
      j["stateA"] = to_json(state_graph(d, Smoothing::A));
      j["stateB"] = to_json(state_graph(d, Smoothing::B));
      emit(j, cfg);
    } else if (bracket->parsed()) {
      const LinkDiagram d = load_diagram(input, cfg);
      Json j;
      if (method == "state" || method == "both") j["bracket"] = to_json(kauffman_bracket(d, bracket_options(cfg)), 4);
      if (method == "skein" || method == "both")
        j[method == "both" ? "skein" : "bracket"] = to_json(kauffman_bracket_skein(d, bracket_options(cfg)), 4);
      if (method == "both") j["agree"] = j["bracket"]["terms"] == j["skein"]["terms"];
      emit(j, cfg);
    } else if (jones_cmd->parsed()) {
      emit(jones_json(load_diagram(input, cfg), cfg), cfg);
    } else if (coeffs->parsed()) {
      const LinkDiagram d = load_diagram(input, cfg);
      const LaurentPoly b = kauffman_bracket(d, bracket_options(cfg));
      Json j;
      j["bracket"] = to_json(b, 4);
      const StateGraph ga = state_graph(d, Smoothing::A), gb = state_graph(d, Smoothing::B);
      j["identity"] = to_json(check_stoimenow(d, ga, gb, b));
      j["bounds"] = to_json(coefficient_bounds(d, twist_regions(d), b));
      emit(j, cfg);
    } else if (geo->parsed()) {
      const LinkDiagram d = load_diagram(input, cfg);
      const TwistDecomposition td = twist_regions(d);
      const StateCircles sa = smooth_all(d, Smoothing::A), sb = smooth_all(d, Smoothing::B);
      const StateGraph ga = state_graph(sa), gb = state_graph(sb);
      const Classification cls = classify(d, td, sa, sb);
      const TuraevEuler te = turaev_euler(d, td, ga, gb, cls);
      Json j;
      j["tw"] = td.tw();
      j["classification"] = {{"vBigon", cls.v_bigon},           {"vNgon", cls.v_ngon},
                             {"eShort", cls.e_short},           {"eLong", cls.e_long},
                             {"eShortReduced", cls.e_short_reduced}, {"eLongReduced", cls.e_long_reduced}};
      j["turaev"] = {{"fromNgon", te.from_ngon}, {"fromStates", te.from_states}, {"agree", te.agree()}};
      j["geography"] = to_json(geography(d, td));
      emit(j, cfg);
    } else if (bounds->parsed()) {
      VolumeBound b;
      if (b_fill->parsed()) b = filling_lower_bound(vol, lmin);
      else if (b_aug->parsed()) b = augmented_lower(tw, two_bridge);
      else if (b_link->parsed()) b = link_volume_bounds(tw, min_crossings);
      else if (b_surg->parsed())
        b = surgered_link_bounds(tw, b_surg->count("--min-crossings") ? std::optional<int>(min_crossings) : std::nullopt,
                                 parse_int_list(counts));
      else if (b_pq->parsed()) b = pq_surgery_bound(vol, q);
      else if (b_br->parsed()) b = branched_cover_bounds(vol, p, improved);
      else if (b_nz->parsed()) {
        emit(to_json(nz_comparison(vol, vol_c, ell)), cfg);
        return 0;
      } else if (b_metric->parsed()) {
        const MetricBound m = manifold_metric_bound(vol, parse_double_list(cusps), lmin, zeta);
        emit({{"bound", m.bound}, {"supremum", m.supremum}, {"refined", m.refined}}, cfg);
        return 0;
      } else if (b_diag->parsed()) {
        const LinkDiagram d = load_diagram(input, cfg);
        FillingSelection sel;
        sel.crossing_circles = !no_circles;
        for (int c : parse_int_list(components)) sel.components.push_back(c - 1);
        b = diagrammatic_lower_bound(d, twist_regions(d), sel);
      }
      emit(to_json(b), cfg);
      if (!b.hypotheses_hold()) return 1;
    } else if (tube->parsed()) {
      const TubeOptions opts = tube_options(cfg);
      if (t_build->parsed()) {
        const BuiltTube bt = build_tube(l1, l2, zeta, theta, opts);
        if (!profile_out.empty()) {
          std::ofstream out(profile_out);
          if (!out) throw InputError("cannot write '" + profile_out + "'");
          out << to_json(bt.profile, stride == 0 ? 100 : stride).dump(1) << '\n';
        }
        emit(to_json(bt.certificate), cfg);
        if (!bt.certificate.volume_ok || !bt.certificate.curvature_ok) return 3;
      } else if (t_sweep->parsed()) {
        const double hl = h(l1);
        if (!(l1 > 2 * std::numbers::pi)) throw HypothesisError("l1 must exceed 2 pi");
        const double lo = t_sweep->count("--tmin") ? tmin : 0.5 * hl;
        const double hi = t_sweep->count("--tmax") ? tmax : 0.999 * hl;
        if (!(lo <= hi)) throw InputError("need tmin <= tmax");
        Json rows = Json::array();
        for (int j = 0; j < n; ++j) {
          const double tj = n == 1 ? lo : lo + (hi - lo) * j / (n - 1);
          const EpsilonSolve es = solve_epsilon(tj, l1, opts);
          const double v = l2 * FSolution(tj, es.eps, l1, opts.shoot_band_steps).volume_per_l2();
          rows.push_back({{"t", tj}, {"eps", es.eps}, {"m", es.m}, {"iterations", es.iterations}, {"volume", v}});
        }
        emit({{"l1", l1}, {"l2", l2}, {"h", hl}, {"rows", rows}}, cfg);
      } else if (t_verify->parsed()) {
        if (!(l1 > 2 * std::numbers::pi)) throw HypothesisError("l1 must exceed 2 pi");
        const double tt = t_verify->count("--t") ? t : 0.5 * h(l1);
        const double ee = t_verify->count("--eps") ? eps : solve_epsilon(tt, l1, opts).eps;
        const TubeProfile prof = integrate_tube(tt, ee, l1, l2, opts);
        const ProfileCheck c = check_profile(prof);
        const RichardsonReport r = richardson(tt, ee, l1, l2, opts);
        const double t2 = tt + 0.5 * (h(l1) - tt);
        const MonotonicityReport mono = monotonicity_suite(tt, t2, 0.5 * ee, ee + 0.1, l1, opts);
        const RegularityReport reg = regularity_sequence(l1, 12, opts);
        bool ok = c.ok() && r.ok && mono.ok() && reg.ok();
        Json j;
        j["t"] = tt;
        j["eps"] = ee;
        j["l1"] = l1;
        j["l2"] = l2;
        j["r0"] = prof.r0;
        j["m"] = prof.m;
        j["volume"] = tube_volume(prof);
        j["curvatureMax"] = curvature_max(prof);
        j["checks"] = {{"initial", c.initial_ok},     {"fpPositive", c.fp_positive},   {"r0Bound", c.r0_bound},
                       {"fIncreasing", c.f_increasing}, {"root", c.root_ok},          {"residualF", c.residual_f},
                       {"residualFp", c.residual_fp},  {"residualLnG", c.residual_lng}, {"residualsOk", c.residuals_ok}};
        j["richardson"] = {{"r0", r.r0_rel}, {"m", r.m_rel}, {"volume", r.volume_rel}, {"ok", r.ok}};
        Json mj = Json::array();
        for (const auto& mc : mono.cases)
          mj.push_back({{"kind", mc.kind}, {"minPhi", mc.min_phi}, {"maxPhiPrime", mc.max_phip}, {"ok", mc.ok}});
        j["monotonicity"] = mj;
        j["regularity"] = {{"steps", reg.steps.size()},       {"c1Positive", reg.c1_positive},
                           {"c2Negative", reg.c2_negative},   {"epsDecreasing", reg.eps_decreasing},
                           {"supDecreasing", reg.sup_decreasing}, {"r0Converging", reg.r0_converging},
                           {"ok", reg.ok()}};
        if (points > 0) {
          const PropertyRun run = random_property_suite(points, cfg.seed, opts);
          int bad = 0;
          for (const auto& pt : run.points) bad += !pt.ok();
          j["properties"] = {{"points", run.points.size()},
                             {"failing", bad},
                             {"c2Negative", run.c2_negative},
                             {"r0Below", run.r0_below},
                             {"harnessTrials", run.harness.trials},
                             {"harnessFailures", run.harness.theorem_failures + run.harness.lemma_failures},
                             {"ok", run.ok()}};
          ok = ok && run.ok();
        }
        j["kernels"] = kernels::isa_name(kernels::active_isa());
        j["ok"] = ok;
        emit(j, cfg);
        if (!ok) return 3;
      }
    } else if (census->parsed()) {
      std::ifstream in(input);
      if (!in) throw InputError("cannot open '" + input + "'");
      const CensusTable table = census_compare(read_census_csv(in), bins);
      if (!plot.empty()) {
        std::ofstream out(plot);
        if (!out) throw InputError("cannot write '" + plot + "'");
        write_census_plot(out, table);
      }
      emit(to_json(table), cfg);
    } else if (corpus_cmd->parsed()) {
      Json list = Json::array();
      for (const auto& e : corpus()) {
        list.push_back({{"name", e.name},
                        {"family", e.family},
                        {"crossings", e.diagram.crossing_count()},
                        {"components", e.diagram.component_count()}});
        if (!export_dir.empty()) {
          std::string file = e.name;
          for (auto& ch : file)
            if (ch == '(' || ch == ')' || ch == ',' || ch == '#' || ch == '+') ch = '_';
          std::ofstream out(export_dir + "/" + file + ".pd");
          if (!out) throw InputError("cannot write into '" + export_dir + "'");
          out << "% " << e.name << "\n" << e.diagram.to_pd();
        }
      }
      emit(list, cfg);
    } else if (verify->parsed()) {
      const auto results = run_acceptance(parse_int_list(only));
      int failed = 0;
      for (const auto& r : results) {
        std::cout << r.line() << '\n';
        failed += !r.pass;
      }
      std::cout << results.size() - failed << "/" << results.size() << " criteria pass\n";
      return failed == 0 ? 0 : 1;
    }
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis not met: " << e.what() << '\n';
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric diagnostic: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric diagnostic: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
