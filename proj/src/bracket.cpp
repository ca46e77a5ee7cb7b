#include "twistvol/bracket.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <thread>

namespace twistvol {

namespace {

void check_limit(const LinkDiagram& d, const BracketOptions& opts) {
  if (d.crossing_count() > opts.crossing_limit)
    throw InputError("crossing count " + std::to_string(d.crossing_count()) + " exceeds the state-sum limit " +
                     std::to_string(opts.crossing_limit));
  if (d.crossing_count() > 62) throw InputError("state sum supports at most 62 crossings");
}

}  // namespace

LaurentPoly kauffman_bracket(const LinkDiagram& d, BracketOptions opts) {
  check_limit(d, opts);
  const int c = d.crossing_count();
  const unsigned long long states = 1ull << c;
  unsigned nt = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  nt = static_cast<unsigned>(std::min<unsigned long long>(nt, std::max(1ull, states >> 10)));
  const int max_circles = d.arc_count() + d.free_loop_count() + 1;
  // histogram[b][circles]: number of states with b B-smoothings
  using Hist = std::vector<std::vector<long long>>;
  std::vector<Hist> parts(nt, Hist(c + 1, std::vector<long long>(max_circles + 1, 0)));
  auto work = [&](unsigned k) {
    Hist& h = parts[k];
    for (unsigned long long m = k; m < states; m += nt) ++h[__builtin_popcountll(m)][circle_count(d, m)];
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < nt; ++k) pool.emplace_back(work, k);
  work(0);
  for (auto& th : pool) th.join();

  const LaurentPoly delta = loop_value();
  std::vector<LaurentPoly> dpow{LaurentPoly::constant(1)};
  for (int i = 1; i <= max_circles; ++i) dpow.push_back(dpow.back() * delta);
  LaurentPoly out;
  for (int b = 0; b <= c; ++b) {
    for (int circles = 1; circles <= max_circles; ++circles) {
      long long n = 0;
      for (const Hist& h : parts) n += h[b][circles];
      if (!n) continue;
      out += (dpow[circles - 1] * LaurentPoly::constant(n)).shifted(c - 2 * b);
    }
  }
  return out;
}

LaurentPoly kauffman_bracket_skein(const LinkDiagram& d, BracketOptions opts) {
  check_limit(d, opts);
  const int c = d.crossing_count();
  const LaurentPoly delta = loop_value();
  if (c == 0) {
    LaurentPoly r = LaurentPoly::constant(1);
    for (int k = 1; k < d.free_loop_count(); ++k) r = r * delta;
    return r;
  }
  // order crossings so the frontier of unresolved slots stays small
  std::vector<int> order;
  {
    std::vector<bool> placed(c, false);
    order.push_back(0);
    placed[0] = true;
    while (static_cast<int>(order.size()) < c) {
      int best = -1, best_links = -1;
      for (int x = 0; x < c; ++x) {
        if (placed[x]) continue;
        int links = 0;
        for (int p = 0; p < 4; ++p) links += placed[d.across({x, p}).crossing];
        if (links > best_links) best = x, best_links = links;
      }
      order.push_back(best);
      placed[best] = true;
    }
  }
  std::vector<int> rank(c);
  for (int i = 0; i < c; ++i) rank[order[i]] = i;
  // slot id = 4 * rank + position; the initial matching pairs arc ends
  std::vector<int> match(4 * c);
  for (const auto& arc : d.arcs()) {
    const int u = 4 * rank[arc.ends[0].crossing] + arc.ends[0].position;
    const int v = 4 * rank[arc.ends[1].crossing] + arc.ends[1].position;
    match[u] = v;
    match[v] = u;
  }
  // memo key: step and the matching among live slots (those >= 4 * step)
  std::map<std::pair<int, std::vector<int>>, LaurentPoly> memo;
  auto solve = [&](auto&& self, int step, std::vector<int> m) -> LaurentPoly {
    if (step == c) return LaurentPoly::constant(1);
    const int base = 4 * step;
    // the key is the partner of every live slot, where slots of the current
    // crossing connect through resolved material
    std::vector<int> key(m.begin() + base, m.end());
    auto found = memo.find({step, key});
    if (found != memo.end()) return found->second;
    LaurentPoly total;
    for (int s = 0; s < 2; ++s) {
      std::vector<int> w = m;
      int loops = 0;
      const int pairs[2][2][2] = {{{0, 1}, {2, 3}}, {{1, 2}, {3, 0}}};
      for (const auto& pr : pairs[s]) {
        const int p = base + pr[0], q = base + pr[1];
        if (w[p] == q) {
          ++loops;
          w[p] = p;
          w[q] = q;
          continue;
        }
        const int mp = w[p], mq = w[q];
        w[mp] = mq;
        w[mq] = mp;
        w[p] = p;
        w[q] = q;
      }
      LaurentPoly sub = self(self, step + 1, std::move(w));
      for (int k = 0; k < loops; ++k) sub = sub * delta;
      total += sub.shifted(s == 0 ? 1 : -1);
    }
    memo.emplace(std::make_pair(step, std::move(key)), total);
    return total;
  };
  LaurentPoly full = solve(solve, 0, match);
  auto q = full.divide_exact(delta);
  if (!q) throw NumericError("skein expansion not divisible by the loop value");
  LaurentPoly r = *q;
  for (int k = 0; k < d.free_loop_count(); ++k) r = r * delta;
  return r;
}

CoefficientSummary summarize(const LaurentPoly& p, int step) {
  CoefficientSummary s;
  if (p.is_zero()) return s;
  s.top = p.max_exponent();
  s.bottom = p.min_exponent();
  s.alpha = p.coeff(s.top);
  s.beta = p.coeff(s.top - step);
  s.alpha_prime = p.coeff(s.bottom);
  s.beta_prime = p.coeff(s.bottom + step);
  return s;
}

JonesResult jones_from_bracket(const LaurentPoly& bracket, int w) {
  LaurentPoly f = LaurentPoly::monomial((w % 2 == 0) ? 1 : -1, -3 * w) * bracket;
  LaurentPoly q(Variable::q);
  for (const auto& [e, c] : f.terms()) {
    if (e % 2 != 0) throw NumericError("normalized bracket has an odd exponent");
    q.add_term(c, -e / 2);
  }
  return {q, summarize(q, 2), w};
}

JonesResult jones(const LinkDiagram& d, BracketOptions opts) {
  return jones_from_bracket(kauffman_bracket(d, opts), writhe(d));
}

StoimenowReport check_stoimenow(const LinkDiagram& d, const StateGraph& ga, const StateGraph& gb,
                                const LaurentPoly& bracket) {
  StoimenowReport r;
  r.a_adequate = !ga.has_loop();
  r.b_adequate = !gb.has_loop();
  if (!r.a_adequate && !r.b_adequate) throw HypothesisError("diagram is neither A- nor B-adequate");
  if (!d.connected()) throw HypothesisError("coefficient identity needs a connected diagram");
  const CoefficientSummary s = summarize(bracket, 4);
  r.abs_beta = std::llabs(s.beta);
  r.abs_beta_prime = std::llabs(s.beta_prime);
  r.e_a = ga.reduced_edge_count();
  r.e_b = gb.reduced_edge_count();
  r.v_a = ga.vertices;
  r.v_b = gb.vertices;
  r.beta_matches = r.a_adequate && r.abs_beta == r.e_a - r.v_a + 1;
  r.beta_prime_matches = r.b_adequate && r.abs_beta_prime == r.e_b - r.v_b + 1;
  r.sum_matches = r.a_adequate && r.b_adequate && r.abs_beta + r.abs_beta_prime == r.e_a + r.e_b - r.v_a - r.v_b + 2;
  r.alpha_unit = r.a_adequate && std::llabs(s.alpha) == 1;
  r.alpha_prime_unit = r.b_adequate && std::llabs(s.alpha_prime) == 1;
  const JonesResult j = jones_from_bracket(bracket, writhe(d));
  r.jones_agrees = std::llabs(j.summary.beta) + std::llabs(j.summary.beta_prime) == r.abs_beta + r.abs_beta_prime;
  return r;
}

CoefficientBoundsReport coefficient_bounds(const LinkDiagram& d, const TwistDecomposition& t,
                                           const LaurentPoly& bracket) {
  CoefficientBoundsReport r;
  const CoefficientSummary s = summarize(bracket, 4);
  r.beta_sum = std::llabs(s.beta) + std::llabs(s.beta_prime);
  r.tw = t.tw();
  r.adequate = is_adequate(d).adequate();
  r.upper_gated = r.adequate && r.tw >= 2 && d.connected();
  r.lower_gated = r.upper_gated && t.min_region_size() >= 3;
  r.upper_holds = r.beta_sum <= 2 * r.tw;
  r.lower_holds = 3 * r.beta_sum >= r.tw + 3;
  if (!d.connected())
    r.note = "split diagram: bounds not asserted";
  else if (!r.adequate)
    r.note = "not adequate";
  else if (r.tw < 2)
    r.note = "tw < 2: bounds not asserted";
  else if (!r.lower_gated)
    r.note = "some twist region has fewer than 3 crossings: lower bound not asserted";
  return r;
}

}  // namespace twistvol
