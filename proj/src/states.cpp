#include "twistvol/states.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace twistvol {

namespace {

int join_partner(int p, Smoothing s) {
  if (s == Smoothing::A) return p ^ 1;
  return p % 2 == 1 ? (p + 1) % 4 : (p + 3) % 4;
}

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<int> parent;
};

}  // namespace

StateCircles smooth_all(const LinkDiagram& d, Smoothing kind) {
  StateCircles sc;
  sc.kind = kind;
  const int e = d.arc_count();
  sc.circle_of_arc.assign(e, -1);
  for (int a0 = 0; a0 < e; ++a0) {
    if (sc.circle_of_arc[a0] >= 0) continue;
    const int ci = sc.count();
    std::vector<int> circle;
    int a = a0;
    Slot arrive = d.arcs()[a].ends[1];
    do {
      sc.circle_of_arc[a] = ci;
      circle.push_back(a);
      const Slot leave{arrive.crossing, join_partner(arrive.position, kind)};
      a = d.arc_at(leave);
      const auto& arc = d.arcs()[a];
      arrive = arc.ends[0] == leave ? arc.ends[1] : arc.ends[0];
    } while (a != a0);
    sc.circles.push_back(std::move(circle));
  }
  for (int k = 0; k < d.free_loop_count(); ++k) sc.circles.emplace_back();
  const int first = kind == Smoothing::A ? 0 : 1;
  for (int x = 0; x < d.crossing_count(); ++x)
    sc.at_crossing.push_back({sc.circle_of_arc[d.arc_at(x, first)], sc.circle_of_arc[d.arc_at(x, first + 2)]});
  return sc;
}

int circle_count(const LinkDiagram& d, unsigned long long b_mask) {
  DisjointSets ds(std::max(d.arc_count(), 1));
  int circles = d.arc_count();
  for (int x = 0; x < d.crossing_count(); ++x) {
    if (b_mask >> x & 1ull) {
      circles -= ds.unite(d.arc_at(x, 1), d.arc_at(x, 2));
      circles -= ds.unite(d.arc_at(x, 3), d.arc_at(x, 0));
    } else {
      circles -= ds.unite(d.arc_at(x, 0), d.arc_at(x, 1));
      circles -= ds.unite(d.arc_at(x, 2), d.arc_at(x, 3));
    }
  }
  return circles + d.free_loop_count();
}

bool StateGraph::has_loop() const { return std::find(loop.begin(), loop.end(), true) != loop.end(); }

StateGraph state_graph(const StateCircles& s) {
  StateGraph g;
  g.kind = s.kind;
  g.vertices = s.count();
  std::set<std::pair<int, int>> distinct;
  for (const auto& jc : s.at_crossing) {
    g.edges.emplace_back(jc[0], jc[1]);
    g.loop.push_back(jc[0] == jc[1]);
    distinct.emplace(std::min(jc[0], jc[1]), std::max(jc[0], jc[1]));
  }
  g.reduced.assign(distinct.begin(), distinct.end());
  return g;
}

StateGraph state_graph(const LinkDiagram& d, Smoothing kind) { return state_graph(smooth_all(d, kind)); }

Adequacy is_adequate(const LinkDiagram& d) {
  return {!state_graph(d, Smoothing::A).has_loop(), !state_graph(d, Smoothing::B).has_loop()};
}

Classification classify(const LinkDiagram&, const TwistDecomposition& t, const StateCircles& sa,
                        const StateCircles& sb) {
  Classification cls;
  const std::array<const StateCircles*, 2> states{&sa, &sb};
  auto st = [&](Smoothing k) -> const StateCircles& { return *states[k == Smoothing::A ? 0 : 1]; };
  std::array<std::set<int>, 2> bigon_set;
  for (const auto& r : t.regions) {
    if (r.size() < 2) {
      cls.long_side.push_back(std::nullopt);
      cls.e_short += 2;
      continue;
    }
    const int probe = !r.bigons.empty() ? r.bigons.front() : *r.closing_bigon;
    const Smoothing lk = closing_smoothing(t.faces[probe].corners.front().corner);
    cls.long_side.push_back(lk);
    cls.e_long += r.size();
    cls.e_short += r.size();
    for (int fi : r.bigons) {
      const int circle = st(lk).circle_of_arc[t.faces[fi].sides.front().arc];
      if (bigon_set[lk == Smoothing::A ? 0 : 1].insert(circle).second) cls.bigon_vertices.emplace_back(lk, circle);
    }
  }
  cls.v_bigon = static_cast<int>(cls.bigon_vertices.size());
  cls.v_ngon = sa.count() + sb.count() - cls.v_bigon;
  for (const StateCircles* s : states) {
    const auto& bs = bigon_set[s->kind == Smoothing::A ? 0 : 1];
    for (const auto& [u, v] : state_graph(*s).reduced) {
      if (bs.count(u) || bs.count(v))
        ++cls.e_long_reduced;
      else
        ++cls.e_short_reduced;
    }
  }
  return cls;
}

Classification classify(const LinkDiagram& d, const TwistDecomposition& t) {
  return classify(d, t, smooth_all(d, Smoothing::A), smooth_all(d, Smoothing::B));
}

TuraevEuler turaev_euler(const LinkDiagram& d, const TwistDecomposition& t, const StateGraph& ga,
                         const StateGraph& gb, const Classification& cls) {
  return {cls.v_ngon - t.tw(), ga.vertices + gb.vertices - d.crossing_count()};
}

Geography geography(const LinkDiagram& d, const TwistDecomposition& t) {
  for (const auto& r : t.regions)
    if (r.size() < 2) throw HypothesisError("geography needs every twist region to have at least 2 crossings");
  const StateCircles sa = smooth_all(d, Smoothing::A), sb = smooth_all(d, Smoothing::B);
  const Classification cls = classify(d, t, sa, sb);
  auto st = [&](Smoothing k) -> const StateCircles& { return k == Smoothing::A ? sa : sb; };

  Geography g;
  g.tw = t.tw();
  g.p_vertices = 2 * g.tw;
  g.red_edges = g.tw;

  // external slots of each region's two end crossings
  std::map<std::pair<int, int>, int> pvertex_at;
  for (int ri = 0; ri < g.tw; ++ri) {
    const TwistRegion& r = t.regions[ri];
    auto mark = [&](int x, int bigon_face, int pv) {
      int corner = -1;
      for (const auto& c : t.faces[bigon_face].corners)
        if (c.crossing == x) corner = c.corner;
      pvertex_at[{x, (corner + 2) % 4}] = pv;
      pvertex_at[{x, (corner + 3) % 4}] = pv;
    };
    mark(r.crossings.front(), r.bigons.front(), 2 * ri);
    mark(r.crossings.back(), r.bigons.back(), 2 * ri + 1);
  }
  DisjointSets phi(g.p_vertices);
  std::set<int> black_arcs;
  for (const auto& [slot, pv] : pvertex_at) {
    const Slot s{slot.first, slot.second};
    const Slot o = d.across(s);
    auto it = pvertex_at.find({o.crossing, o.position});
    if (it == pvertex_at.end()) throw NumericError("geography: external arc does not reach a region end");
    black_arcs.insert(d.arc_at(s));
    phi.unite(pv, it->second);
  }
  g.black_edges = static_cast<int>(black_arcs.size());
  std::map<int, int> phi_count;
  for (int v = 0; v < g.p_vertices; ++v) ++phi_count[phi.find(v)];
  g.phi_components = static_cast<int>(phi_count.size());
  for (auto& [root, n] : phi_count) g.phi_sizes.push_back(n);

  // provinces are the non-bigon circles of both states
  std::set<std::pair<Smoothing, int>> bigon(cls.bigon_vertices.begin(), cls.bigon_vertices.end());
  std::map<std::pair<Smoothing, int>, int> province;
  for (Smoothing k : {Smoothing::A, Smoothing::B})
    for (int c = 0; c < st(k).count(); ++c)
      if (!bigon.count({k, c})) province.emplace(std::make_pair(k, c), static_cast<int>(province.size()));
  const int np = static_cast<int>(province.size());
  DisjointSets countries(np);
  std::vector<std::pair<int, int>> red;
  for (int ri = 0; ri < g.tw; ++ri) {
    const Smoothing sk = opposite(*cls.long_side[ri]);
    const auto jc = st(sk).at_crossing[t.regions[ri].crossings.front()];
    const int u = province.at({sk, jc[0]}), v = province.at({sk, jc[1]});
    red.emplace_back(u, v);
    countries.unite(u, v);
  }
  std::map<int, int> country_index;
  for (int p = 0; p < np; ++p) {
    auto [it, fresh] = country_index.emplace(countries.find(p), static_cast<int>(g.countries.size()));
    if (fresh) g.countries.emplace_back();
    ++g.countries[it->second].provinces;
  }
  for (const auto& [u, v] : red) ++g.countries[country_index.at(countries.find(u))].red_edges;
  for (Smoothing k : {Smoothing::A, Smoothing::B}) {
    for (const auto& [u, v] : state_graph(st(k)).reduced) {
      if (bigon.count({k, u}) || bigon.count({k, v})) continue;
      ++g.countries[country_index.at(countries.find(province.at({k, u})))].e_short_reduced;
    }
  }
  for (const auto& c : g.countries) g.chi += c.chi();
  if (!g.gated()) g.warnings.push_back("tw < 2: country bound not asserted");
  for (int n : g.phi_sizes)
    if (n < 3) {
      g.warnings.push_back("a black circle carries fewer than 3 P-vertices");
      break;
    }
  return g;
}

}  // namespace twistvol
