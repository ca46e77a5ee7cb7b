#include <doctest.h>

#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "twistvol/bracket.hpp"
#include "twistvol/builders.hpp"
#include "twistvol/corpus.hpp"
#include "twistvol/errors.hpp"

using namespace twistvol;

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

struct StateData {
  int circles;
  std::vector<int> slot_circle;  // 4 per crossing
};

StateData state(const LinkDiagram& d, unsigned long long mask) {
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
  StateData s{d.free_loop_count(), {}};
  for (int i = 0; i < static_cast<int>(id.size()); ++i) s.circles += u.find(i) == i;
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < 4; ++i) s.slot_circle.push_back(u.find(id[d.arc_at(c, i)]));
  return s;
}

// Plain state sum over all 2^n states, normalized so the unknot is 1.
LaurentPoly oracle_bracket(const LinkDiagram& d) {
  const int n = d.crossing_count();
  LaurentPoly out;
  const LaurentPoly delta = loop_value();
  for (unsigned long long m = 0; m < (1ULL << n); ++m) {
    const int b = __builtin_popcountll(m);
    out += (delta.pow(state(d, m).circles - 1)).shifted(n - 2 * b);
  }
  return out;
}

// Reduced state graph: circles joined by at least one crossing.
std::pair<int, int> reduced_graph(const LinkDiagram& d, bool b_state) {
  const int n = d.crossing_count();
  const StateData s = state(d, b_state ? (1ULL << n) - 1 : 0);
  std::set<std::pair<int, int>> edges;
  for (int c = 0; c < n; ++c) {
    int x = s.slot_circle[4 * c], y = s.slot_circle[4 * c + (b_state ? 1 : 2)];
    if (x > y) std::swap(x, y);
    edges.insert({x, y});
  }
  return {s.circles, static_cast<int>(edges.size())};
}

LaurentPoly q_poly(std::initializer_list<std::pair<int, int>> terms) {
  LaurentPoly p(Variable::q);
  for (auto [e, c] : terms) p.add_term(c, e);
  return p;
}

long long value_at_one(const LaurentPoly& p) {
  long long s = 0;
  for (auto [e, c] : p.terms()) s += c;
  return s;
}

long long derivative_at_one(const LaurentPoly& p) {
  long long s = 0;
  for (auto [e, c] : p.terms()) s += e * c;
  return s;
}

}  // namespace

TEST_CASE("state sum matches the plain oracle on the corpus") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    if (e.diagram.crossing_count() > 14) continue;
    CHECK(kauffman_bracket(e.diagram) == oracle_bracket(e.diagram));
  }
}

TEST_CASE("skein recursion agrees with the state sum") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    CHECK(kauffman_bracket_skein(e.diagram) == kauffman_bracket(e.diagram));
  }
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> gen(1, 3), len(1, 9), sgn(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> word;
    for (int i = len(rng); i > 0; --i) word.push_back(sgn(rng) ? gen(rng) : -gen(rng));
    CAPTURE(trial);
    const LinkDiagram d = braid_closure(4, word, {true});
    CHECK(kauffman_bracket_skein(d) == oracle_bracket(d));
  }
}

TEST_CASE("thread count does not change the result") {
  const LinkDiagram& d = corpus_entry("P(3,3,-3,-3)").diagram;
  CHECK(kauffman_bracket(d, {24, 1}) == kauffman_bracket(d, {24, 7}));
}

TEST_CASE("known Jones polynomials in q = t^(1/2)") {
  CHECK(jones(corpus_entry("unknot").diagram).poly == q_poly({{0, 1}}));
  CHECK(jones(corpus_entry("trefoil").diagram).poly == q_poly({{-2, 1}, {-6, 1}, {-8, -1}}));
  CHECK(jones(corpus_entry("trefoil-mirror").diagram).poly == q_poly({{2, 1}, {6, 1}, {8, -1}}));
  CHECK(jones(corpus_entry("figure-8").diagram).poly == q_poly({{4, 1}, {2, -1}, {0, 1}, {-2, -1}, {-4, 1}}));
  CHECK(jones(corpus_entry("hopf").diagram).poly == q_poly({{1, -1}, {5, -1}}));
  CHECK(jones(corpus_entry("kink+").diagram).poly == q_poly({{0, 1}}));
  CHECK(jones(corpus_entry("unknot-r1r1").diagram).poly == q_poly({{0, 1}}));
  CHECK(jones(corpus_entry("unlink-r2").diagram).poly == q_poly({{1, -1}, {-1, -1}}));
}

TEST_CASE("Jones values at t = 1 and multiplicativity") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    const JonesResult j = jones(e.diagram);
    long long expect = 1;
    for (int i = 1; i < e.diagram.component_count(); ++i) expect *= -2;
    CHECK(value_at_one(j.poly) == expect);
    if (e.diagram.component_count() == 1) CHECK(derivative_at_one(j.poly) == 0);
    CHECK(jones(e.diagram.mirror()).poly == j.poly.scale_exponents(-1));
  }
  const auto& t = corpus_entry("trefoil").diagram;
  const auto& f = corpus_entry("figure-8").diagram;
  CHECK(jones(connected_sum(t, f)).poly == jones(t).poly * jones(f).poly);
}

TEST_CASE("coefficient identity against reduced state graphs") {
  int checked = 0;
  for (const auto& e : corpus()) {
    const LinkDiagram& d = e.diagram;
    if (!d.connected() || d.crossing_count() == 0) continue;
    const Adequacy a = is_adequate(d);
    if (!a.adequate()) continue;
    CAPTURE(e.name);
    ++checked;
    const auto [va, ea] = reduced_graph(d, false);
    const auto [vb, eb] = reduced_graph(d, true);
    const JonesResult j = jones(d);
    const CoefficientSummary s = j.summary;
    CHECK(std::llabs(s.alpha) == 1);
    CHECK(std::llabs(s.alpha_prime) == 1);
    CHECK(std::llabs(s.beta) + std::llabs(s.beta_prime) == ea + eb - va - vb + 2);
    const LaurentPoly b = kauffman_bracket(d);
    const StoimenowReport r = check_stoimenow(d, state_graph(d, Smoothing::A), state_graph(d, Smoothing::B), b);
    CHECK(r.sum_matches);
    CHECK(r.beta_matches);
    CHECK(r.beta_prime_matches);
    CHECK(r.jones_agrees);
  }
  CHECK(checked >= 20);
}

TEST_CASE("twist-number bounds") {
  for (const auto& e : corpus()) {
    const LinkDiagram& d = e.diagram;
    if (!d.connected() || d.crossing_count() == 0) continue;
    CAPTURE(e.name);
    const TwistDecomposition t = twist_regions(d);
    const CoefficientBoundsReport r = coefficient_bounds(d, t, kauffman_bracket(d));
    const CoefficientSummary s = jones(d).summary;
    const long long sum = std::llabs(s.beta) + std::llabs(s.beta_prime);
    if (r.upper_gated) {
      CHECK(r.upper_holds);
      CHECK(sum <= 2 * t.tw());
    }
    if (r.lower_gated) {
      CHECK(r.lower_holds);
      CHECK(3 * sum >= t.tw() + 3);
    }
  }
  const LinkDiagram& t = corpus_entry("trefoil").diagram;
  const CoefficientBoundsReport r = coefficient_bounds(t, twist_regions(t), kauffman_bracket(t));
  CHECK_FALSE(r.lower_gated);
  CHECK(std::llabs(jones(t).summary.beta) + std::llabs(jones(t).summary.beta_prime) == 1);
}

TEST_CASE("gates and limits") {
  const LinkDiagram& split = corpus_entry("trefoil+hopf").diagram;
  CHECK_THROWS_AS(check_stoimenow(split, state_graph(split, Smoothing::A), state_graph(split, Smoothing::B),
                                  kauffman_bracket(split)),
                  HypothesisError);
  const LinkDiagram big = torus_2n(9);
  CHECK_THROWS_AS(kauffman_bracket(big, {8, 1}), InputError);
  CHECK_THROWS_AS(kauffman_bracket_skein(big, {8, 1}), InputError);
  CHECK_NOTHROW(kauffman_bracket(big, {9, 1}));
}
