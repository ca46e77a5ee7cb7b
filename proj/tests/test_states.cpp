#include <doctest.h>

#include <map>
#include <numeric>

#include "twistvol/builders.hpp"
#include "twistvol/corpus.hpp"
#include "twistvol/states.hpp"

using namespace twistvol;

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Circles of the state whose B-smoothed crossings are the set bits of mask.
// A joins slots (0,1) and (2,3); B joins (0,3) and (1,2).
int oracle_circles(const LinkDiagram& d, unsigned long long mask) {
  const int n = d.crossing_count();
  std::map<int, int> id;
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < 4; ++i) id.emplace(d.arc_at(c, i), static_cast<int>(id.size()));
  Dsu u(static_cast<int>(id.size()));
  for (int c = 0; c < n; ++c) {
    auto a = [&](int i) { return id[d.arc_at(c, i)]; };
    if (mask >> c & 1) {
      u.unite(a(0), a(3));
      u.unite(a(1), a(2));
    } else {
      u.unite(a(0), a(1));
      u.unite(a(2), a(3));
    }
  }
  int roots = 0;
  for (int i = 0; i < static_cast<int>(id.size()); ++i) roots += u.find(i) == i;
  return roots + d.free_loop_count();
}

bool oracle_adequate(const LinkDiagram& d, Smoothing s) {
  const int n = d.crossing_count();
  const unsigned long long base = s == Smoothing::A ? 0ULL : (n == 64 ? ~0ULL : (1ULL << n) - 1);
  const int c0 = oracle_circles(d, base);
  for (int c = 0; c < n; ++c)
    if (oracle_circles(d, base ^ (1ULL << c)) > c0) return false;
  return true;
}

}  // namespace

TEST_CASE("all-A and all-B circle counts match the union-find oracle") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    const LinkDiagram& d = e.diagram;
    const int n = d.crossing_count();
    const unsigned long long all = (1ULL << n) - 1;
    CHECK(smooth_all(d, Smoothing::A).count() == oracle_circles(d, 0));
    CHECK(smooth_all(d, Smoothing::B).count() == oracle_circles(d, all));
    for (unsigned long long m : {0ULL, all, 5ULL & all, 6ULL & all, 0x2aULL & all})
      CHECK(circle_count(d, m) == oracle_circles(d, m));
  }
}

TEST_CASE("state graphs and adequacy") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    const LinkDiagram& d = e.diagram;
    const StateGraph ga = state_graph(d, Smoothing::A), gb = state_graph(d, Smoothing::B);
    CHECK(ga.vertices == oracle_circles(d, 0));
    CHECK(ga.edge_count() == d.crossing_count());
    CHECK(gb.edge_count() == d.crossing_count());
    CHECK(ga.reduced_edge_count() <= ga.edge_count());
    const Adequacy a = is_adequate(d);
    CHECK(a.a_adequate == oracle_adequate(d, Smoothing::A));
    CHECK(a.b_adequate == oracle_adequate(d, Smoothing::B));
    CHECK(a.a_adequate == !ga.has_loop());
  }
}

TEST_CASE("reduced alternating diagrams") {
  for (const char* name : {"trefoil", "figure-8", "C(3,2)", "C(4,3)", "P(3,3,3)", "T(2,7)"}) {
    CAPTURE(name);
    const LinkDiagram& d = corpus_entry(name).diagram;
    REQUIRE(is_alternating(d));
    CHECK(is_adequate(d).adequate());
    CHECK(smooth_all(d, Smoothing::A).count() + smooth_all(d, Smoothing::B).count() == d.crossing_count() + 2);
  }
  const LinkDiagram& k = corpus_entry("kink+").diagram;
  CHECK_FALSE(is_adequate(k).adequate());
}

TEST_CASE("Turaev cross-check over the corpus") {
  for (const auto& e : corpus()) {
    const LinkDiagram& d = e.diagram;
    if (d.crossing_count() == 0) continue;
    CAPTURE(e.name);
    const TwistDecomposition t = twist_regions(d);
    const StateCircles sa = smooth_all(d, Smoothing::A), sb = smooth_all(d, Smoothing::B);
    const Classification cls = classify(d, t, sa, sb);
    const TuraevEuler te = turaev_euler(d, t, state_graph(sa), state_graph(sb), cls);
    CHECK(te.agree());
    CHECK(te.from_states == sa.count() + sb.count() - d.crossing_count());
    CHECK(cls.v_bigon + cls.v_ngon == sa.count() + sb.count());
    CHECK(cls.e_short + cls.e_long == 2 * d.crossing_count());
    if (d.connected() && is_alternating(d)) CHECK(te.from_ngon == 2);
  }
}

TEST_CASE("geography on gated diagrams") {
  int gated = 0;
  for (const auto& e : corpus()) {
    const LinkDiagram& d = e.diagram;
    if (!d.connected() || d.crossing_count() == 0) continue;
    const TwistDecomposition t = twist_regions(d);
    if (t.tw() < 2 || t.min_region_size() < 2) continue;
    CAPTURE(e.name);
    ++gated;
    const Geography g = geography(d, t);
    CHECK(g.gated());
    CHECK(g.tw == t.tw());
    CHECK(g.country_bound());
    for (const auto& c : g.countries) CHECK(c.short_edge_bound());
  }
  CHECK(gated >= 10);
}
