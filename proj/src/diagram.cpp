#include "twistvol/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace twistvol {

namespace {

class UnionFind {
public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
  std::vector<int> parent_;
};

struct Lexer {
  std::string_view s;
  std::size_t i = 0;
  int line = 1;

  void skip() {
    while (i < s.size()) {
      char ch = s[i];
      if (ch == '%') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        if (ch == '\n') ++line;
        ++i;
      } else {
        break;
      }
    }
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "malformed token at line " << line << ": " << what;
    throw PdParseError(ParseErrorKind::MalformedToken, os.str());
  }
  void expect(char ch) {
    skip();
    if (i >= s.size() || s[i] != ch) fail(std::string("expected '") + ch + "'");
    ++i;
  }
  int integer() {
    skip();
    std::size_t start = i;
    long long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1'000'000'000) fail("label too large");
      ++i;
    }
    if (i == start) fail("expected a positive integer");
    if (v <= 0) fail("labels must be positive");
    return static_cast<int>(v);
  }
};

}  // namespace

LinkDiagram LinkDiagram::parse(std::string_view text, ParseOptions opts) {
  Lexer lx{text};
  std::vector<std::array<int, 4>> quads;
  std::vector<OrientationLine> lines;
  while (!lx.done()) {
    char head = lx.s[lx.i++];
    if (head == 'X') {
      std::array<int, 4> q{};
      lx.expect('(');
      for (int k = 0; k < 4; ++k) {
        if (k) lx.expect(',');
        q[k] = lx.integer();
      }
      lx.expect(')');
      quads.push_back(q);
    } else if (head == 'O') {
      lx.expect('(');
      int k = lx.integer();
      lx.expect(':');
      lx.skip();
      if (lx.i >= lx.s.size() || (lx.s[lx.i] != '+' && lx.s[lx.i] != '-')) lx.fail("expected '+' or '-'");
      bool rev = lx.s[lx.i++] == '-';
      lx.expect(')');
      lines.push_back({k, rev});
    } else {
      lx.fail(std::string("unexpected character '") + head + "'");
    }
  }
  LinkDiagram d;
  d.quads_ = std::move(quads);
  d.lines_ = std::move(lines);
  d.free_loops_ = -1;
  d.build(opts);
  return d;
}

LinkDiagram LinkDiagram::from_quadruples(std::vector<std::array<int, 4>> quads, int free_loops,
                                         std::vector<OrientationLine> lines, ParseOptions opts) {
  LinkDiagram d;
  d.quads_ = std::move(quads);
  d.lines_ = std::move(lines);
  d.free_loops_ = free_loops;
  d.build(opts);
  return d;
}

void LinkDiagram::build(ParseOptions opts) {
  const int n = crossing_count();
  // arcs
  std::map<int, std::vector<Slot>> uses;
  for (int x = 0; x < n; ++x)
    for (int p = 0; p < 4; ++p) uses[quads_[x][p]].push_back({x, p});
  for (auto& [label, slots] : uses) {
    if (slots.size() != 2) {
      std::ostringstream os;
      os << "arc " << label << " used " << slots.size() << " times (expected 2)";
      throw PdParseError(ParseErrorKind::ArcMultiplicity, os.str());
    }
  }
  arcs_.clear();
  slot_arc_.assign(n, {-1, -1, -1, -1});
  for (auto& [label, slots] : uses) {
    Arc a;
    a.label = label;
    a.ends = {slots[0], slots[1]};
    for (const Slot& s : slots) slot_arc_[s.crossing][s.position] = static_cast<int>(arcs_.size());
    arcs_.push_back(a);
  }

  // components, with the orientation implied by the under-strand convention
  components_.clear();
  std::vector<int> comp_of(arcs_.size(), -1);
  for (std::size_t a0 = 0; a0 < arcs_.size(); ++a0) {
    if (comp_of[a0] >= 0) continue;
    const int ci = static_cast<int>(components_.size());
    Component comp;
    int agree = 0, disagree = 0;
    int a = static_cast<int>(a0);
    int head = 1;
    for (;;) {
      if (comp_of[a] >= 0) {
        if (a != static_cast<int>(a0) || arcs_[a].head != head)
          throw PdParseError(ParseErrorKind::NonSpherical, "strand traversal does not close up");
        break;
      }
      comp_of[a] = ci;
      arcs_[a].component = ci;
      arcs_[a].head = head;
      comp.arcs.push_back(a);
      const Slot in = arcs_[a].ends[head];
      if (in.position == 0) ++agree;
      if (in.position == 2) ++disagree;
      const Slot out{in.crossing, (in.position + 2) % 4};
      const int b = slot_arc_[out.crossing][out.position];
      head = arcs_[b].ends[0] == out ? 1 : 0;
      a = b;
    }
    if (agree && disagree) {
      std::ostringstream os;
      os << "component through arc " << arcs_[a0].label
         << " enters some under-crossings at slot 0 and others at slot 2";
      throw PdParseError(ParseErrorKind::InconsistentOrientation, os.str());
    }
    if (disagree) {
      for (int b : comp.arcs) arcs_[b].head ^= 1;
      std::reverse(comp.arcs.begin() + 1, comp.arcs.end());
    }
    components_.push_back(std::move(comp));
  }
  const int arc_components = component_count();

  // free loops and orientation lines
  int max_line = 0;
  for (const auto& l : lines_) {
    if (l.component < 1) throw PdParseError(ParseErrorKind::MalformedToken, "orientation line for component 0");
    max_line = std::max(max_line, l.component);
  }
  if (free_loops_ < 0) free_loops_ = std::max(0, max_line - arc_components);
  if (max_line > arc_components + free_loops_)
    throw PdParseError(ParseErrorKind::MalformedToken, "orientation line names a nonexistent component");
  for (int k = 0; k < free_loops_; ++k) components_.push_back(Component{});
  for (int k = arc_components + 1; k <= arc_components + free_loops_; ++k) {
    bool has = std::any_of(lines_.begin(), lines_.end(), [&](const OrientationLine& l) { return l.component == k; });
    if (!has) lines_.push_back({k, false});
  }
  if (n == 0 && free_loops_ == 0)
    throw PdParseError(ParseErrorKind::EmptyDiagram, "empty diagram: no crossings and no unknot component");

  for (const auto& l : lines_) {
    Component& c = components_[l.component - 1];
    if (c.reversed != l.reversed) {
      c.reversed = l.reversed;
      for (int b : c.arcs) arcs_[b].head ^= 1;
      if (!c.arcs.empty()) std::reverse(c.arcs.begin() + 1, c.arcs.end());
    }
  }

  // graph components and the Euler check on each
  UnionFind uf(std::max(n, 1));
  for (const Arc& a : arcs_) uf.unite(a.ends[0].crossing, a.ends[1].crossing);
  std::map<int, int> vcount;
  for (int x = 0; x < n; ++x) ++vcount[uf.find(x)];
  const int graph_parts = static_cast<int>(vcount.size());
  connected_ = graph_parts + free_loops_ == 1;
  if (!connected_ && !opts.allow_split) {
    std::ostringstream os;
    os << "disconnected diagram: " << graph_parts + free_loops_ << " pieces";
    throw PdParseError(ParseErrorKind::Disconnected, os.str());
  }
  std::map<int, int> fcount;
  for (const Face& f : faces(*this))
    if (!f.sides.empty()) ++fcount[uf.find(arcs_[f.sides[0].arc].ends[0].crossing)];
  for (auto& [root, v] : vcount) {
    const int f = fcount[root];
    if (v - 2 * v + f != 2) {
      std::ostringstream os;
      os << "non-spherical rotation system: V - E + F = " << v << " - " << 2 * v << " + " << f << " = " << f - v;
      throw PdParseError(ParseErrorKind::NonSpherical, os.str());
    }
  }

  signs_.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    const int u = under_in(x), o = over_in(x);
    signs_[x] = (o + 2) % 4 == (u + 1) % 4 ? 1 : -1;
  }
}

Slot LinkDiagram::across(Slot s) const {
  const Arc& a = arcs_[slot_arc_[s.crossing][s.position]];
  return a.ends[0] == s ? a.ends[1] : a.ends[0];
}

int LinkDiagram::under_in(int x) const {
  const Arc& a = arcs_[slot_arc_[x][0]];
  return a.ends[a.head] == Slot{x, 0} ? 0 : 2;
}

int LinkDiagram::over_in(int x) const {
  const Arc& a = arcs_[slot_arc_[x][1]];
  return a.ends[a.head] == Slot{x, 1} ? 1 : 3;
}

int LinkDiagram::under_component(int x) const { return arcs_[slot_arc_[x][0]].component; }
int LinkDiagram::over_component(int x) const { return arcs_[slot_arc_[x][1]].component; }

std::string LinkDiagram::to_pd() const {
  std::ostringstream os;
  for (const auto& q : quads_) os << "X(" << q[0] << ',' << q[1] << ',' << q[2] << ',' << q[3] << ")\n";
  for (const auto& l : lines_) os << "O(" << l.component << ':' << (l.reversed ? '-' : '+') << ")\n";
  return os.str();
}

std::vector<int> LinkDiagram::heads_signature() const {
  std::vector<int> sig;
  for (const Arc& a : arcs_) sig.push_back(a.ends[a.head].crossing * 4 + a.ends[a.head].position);
  return sig;
}

namespace {

// Rebuild a diagram over new quadruples so that arc `label` has its head at
// heads[label]; orientation lines are regenerated.
LinkDiagram orient_like(std::vector<std::array<int, 4>> quads, int free_loops, const std::map<int, Slot>& heads,
                        ParseOptions opts) {
  LinkDiagram base = LinkDiagram::from_quadruples(quads, free_loops, {}, opts);
  std::vector<LinkDiagram::OrientationLine> lines;
  for (int c = 0; c < base.component_count(); ++c) {
    const auto& comp = base.components()[c];
    if (comp.arcs.empty()) continue;
    const auto& a = base.arcs()[comp.arcs[0]];
    if (!(a.ends[a.head] == heads.at(a.label))) lines.push_back({c + 1, true});
  }
  if (lines.empty()) return base;
  return LinkDiagram::from_quadruples(std::move(quads), free_loops, std::move(lines), opts);
}

}  // namespace

LinkDiagram LinkDiagram::reversed(const std::vector<int>& comps) const {
  std::map<int, Slot> heads;
  std::set<int> flip(comps.begin(), comps.end());
  for (const Arc& a : arcs_) heads[a.label] = a.ends[flip.count(a.component) ? 1 - a.head : a.head];
  return orient_like(quads_, free_loops_, heads, {!connected_});
}

LinkDiagram LinkDiagram::mirror() const {
  std::vector<std::array<int, 4>> q(quads_.size());
  std::vector<int> shift(quads_.size());
  for (int x = 0; x < crossing_count(); ++x) {
    shift[x] = over_in(x);
    for (int i = 0; i < 4; ++i) q[x][i] = quads_[x][(shift[x] + i) % 4];
  }
  std::map<int, Slot> heads;
  for (const Arc& a : arcs_) {
    Slot h = a.ends[a.head];
    heads[a.label] = {h.crossing, (h.position - shift[h.crossing] + 4) % 4};
  }
  return orient_like(std::move(q), free_loops_, heads, {!connected_});
}

LinkDiagram LinkDiagram::relabeled(const std::vector<std::pair<int, int>>& label_map) const {
  std::map<int, int> m(label_map.begin(), label_map.end());
  std::set<int> image;
  for (auto& [from, to] : m) {
    if (to <= 0) throw InputError("relabel target must be positive");
    image.insert(to);
  }
  if (image.size() != m.size()) throw InputError("relabel map is not injective");
  auto q = quads_;
  for (auto& quad : q)
    for (int& l : quad) {
      auto it = m.find(l);
      if (it == m.end()) throw InputError("relabel map misses arc " + std::to_string(l));
      l = it->second;
    }
  std::map<int, Slot> heads;
  for (const Arc& a : arcs_) heads[m.at(a.label)] = a.ends[a.head];
  return orient_like(std::move(q), free_loops_, heads, {!connected_});
}

std::vector<Face> faces(const LinkDiagram& d) {
  const int n = d.crossing_count();
  std::vector<Face> out;
  std::vector<std::array<bool, 4>> used(n, {false, false, false, false});
  for (int x = 0; x < n; ++x) {
    for (int p = 0; p < 4; ++p) {
      if (used[x][p]) continue;
      Face f;
      Slot s{x, p};
      while (!used[s.crossing][s.position]) {
        used[s.crossing][s.position] = true;
        const int a = d.arc_at(s);
        f.sides.push_back({a, d.arcs()[a].ends[0] == s ? 0 : 1});
        const Slot t = d.across(s);
        const int c = (t.position + 3) % 4;
        f.corners.push_back({t.crossing, c});
        s = {t.crossing, c};
      }
      out.push_back(std::move(f));
    }
  }
  for (int k = 0; k < d.free_loop_count(); ++k) {
    out.push_back(Face{});
    out.push_back(Face{});
  }
  return out;
}

int writhe(const LinkDiagram& d) {
  int w = 0;
  for (int s : d.signs()) w += s;
  return w;
}

LinkDiagram split_union(const LinkDiagram& a, const LinkDiagram& b) {
  int offset = 0;
  for (const auto& arc : a.arcs()) offset = std::max(offset, arc.label);
  auto q = a.quadruples();
  for (auto quad : b.quadruples()) {
    for (int& l : quad) l += offset;
    q.push_back(quad);
  }
  std::map<int, Slot> heads;
  for (const auto& arc : a.arcs()) heads[arc.label] = arc.ends[arc.head];
  for (const auto& arc : b.arcs()) {
    Slot h = arc.ends[arc.head];
    heads[arc.label + offset] = {h.crossing + a.crossing_count(), h.position};
  }
  return orient_like(std::move(q), a.free_loop_count() + b.free_loop_count(), heads, {true});
}

bool is_prime(const LinkDiagram& d) {
  const int n = d.crossing_count();
  const int e = d.arc_count();
  for (int i = 0; i < e; ++i) {
    for (int j = i + 1; j < e; ++j) {
      UnionFind uf(n);
      for (int k = 0; k < e; ++k)
        if (k != i && k != j) uf.unite(d.arcs()[k].ends[0].crossing, d.arcs()[k].ends[1].crossing);
      std::set<int> roots;
      for (int x = 0; x < n; ++x) roots.insert(uf.find(x));
      if (roots.size() > 1) return false;
    }
  }
  return true;
}

bool is_alternating(const LinkDiagram& d) {
  for (const auto& a : d.arcs())
    if (a.ends[0].position % 2 == a.ends[1].position % 2) return false;
  return true;
}

int TwistDecomposition::min_region_size() const {
  int m = 0;
  for (const auto& r : regions) m = m == 0 ? r.size() : std::min(m, r.size());
  return m;
}

TwistDecomposition twist_regions(const LinkDiagram& d) {
  TwistDecomposition t;
  t.faces = faces(d);
  const int n = d.crossing_count();

  // bigon faces joining two distinct crossings, as seen from each crossing
  std::vector<std::array<int, 4>> bigon_at(n, {-1, -1, -1, -1});
  for (int fi = 0; fi < static_cast<int>(t.faces.size()); ++fi) {
    const Face& f = t.faces[fi];
    if (f.degree() != 2 || f.corners[0].crossing == f.corners[1].crossing) continue;
    for (const auto& c : f.corners) bigon_at[c.crossing][c.corner] = fi;
  }
  // the two bigon faces kept at each crossing
  std::vector<std::vector<int>> link(n);
  for (int x = 0; x < n; ++x) {
    std::array<bool, 4> has{};
    int count = 0;
    for (int c = 0; c < 4; ++c) count += has[c] = bigon_at[x][c] >= 0;
    if (count == 4) {
      // Hopf-like pair: both crossings keep the faces at corners 0 and 2 of
      // the lower-index one
      const Face& f0 = t.faces[bigon_at[x][0]];
      const int y = f0.corners[0].crossing == x ? f0.corners[1].crossing : f0.corners[0].crossing;
      int lo = std::min(x, y);
      if (bigon_at[lo][0] < 0 || bigon_at[lo][2] < 0) lo = x;
      link[x] = {bigon_at[lo][0], bigon_at[lo][2]};
      continue;
    }
    for (int c = 0; c < 4; ++c) {
      if (has[c] && has[(c + 1) % 4]) {
        std::ostringstream os;
        os << "not twist-reducible decomposition: crossing " << x << " has bigons at adjacent corners " << c
           << " and " << (c + 1) % 4;
        throw TwistDecompositionError(os.str());
      }
      if (has[c]) link[x].push_back(bigon_at[x][c]);
    }
  }
  // a bigon counts only if both of its crossings keep it
  auto other = [&](int fi, int x) {
    const Face& f = t.faces[fi];
    return f.corners[0].crossing == x ? f.corners[1].crossing : f.corners[0].crossing;
  };
  auto keeps = [&](int x, int fi) { return std::find(link[x].begin(), link[x].end(), fi) != link[x].end(); };
  for (int x = 0; x < n; ++x)
    std::erase_if(link[x], [&](int fi) { return !keeps(other(fi, x), fi); });

  t.region_of.assign(n, -1);
  std::vector<bool> used_face(t.faces.size(), false);
  for (int x0 = 0; x0 < n; ++x0) {
    if (t.region_of[x0] >= 0) continue;
    // collect the component, find an endpoint
    std::vector<int> comp{x0};
    std::set<int> seen{x0};
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (int fi : link[comp[k]]) {
        int y = other(fi, comp[k]);
        if (seen.insert(y).second) comp.push_back(y);
      }
    int start = -1;
    for (int x : comp)
      if (link[x].size() < 2 && (start < 0 || x < start)) start = x;
    TwistRegion r;
    r.cyclic = start < 0 && comp.size() > 1;
    if (start < 0) start = *std::min_element(comp.begin(), comp.end());
    const int ri = static_cast<int>(t.regions.size());
    int x = start;
    for (;;) {
      r.crossings.push_back(x);
      t.region_of[x] = ri;
      int next_face = -1;
      for (int fi : link[x]) {
        if (used_face[fi]) continue;
        if (next_face < 0 || other(fi, x) < other(next_face, x)) next_face = fi;
      }
      if (next_face < 0) break;
      const int y = other(next_face, x);
      used_face[next_face] = true;
      if (y == start) {
        r.closing_bigon = next_face;
        break;
      }
      r.bigons.push_back(next_face);
      x = y;
    }
    t.regions.push_back(std::move(r));
  }
  std::sort(t.regions.begin(), t.regions.end(), [](const TwistRegion& a, const TwistRegion& b) {
    return *std::min_element(a.crossings.begin(), a.crossings.end()) <
           *std::min_element(b.crossings.begin(), b.crossings.end());
  });
  for (int ri = 0; ri < t.tw(); ++ri)
    for (int x : t.regions[ri].crossings) t.region_of[x] = ri;
  return t;
}

std::vector<AlternationDiagnostic> validate_twist_alternation(const LinkDiagram& d, const TwistDecomposition& t) {
  std::vector<AlternationDiagnostic> out;
  for (int ri = 0; ri < t.tw(); ++ri) {
    const TwistRegion& r = t.regions[ri];
    std::vector<int> bigons = r.bigons;
    if (r.closing_bigon) bigons.push_back(*r.closing_bigon);
    for (int fi : bigons) {
      for (const auto& side : t.faces[fi].sides) {
        const auto& a = d.arcs()[side.arc];
        if (a.ends[0].position % 2 == a.ends[1].position % 2) {
          std::ostringstream os;
          os << "region " << ri << ": arc " << a.label << " is " << (a.ends[0].position % 2 ? "over" : "under")
             << " at both crossings of a bigon";
          out.push_back({ri, fi, os.str()});
          break;
        }
      }
    }
  }
  return out;
}

std::vector<int> component_region_counts(const LinkDiagram& d, const TwistDecomposition& t) {
  std::vector<int> n(d.component_count(), 0);
  for (const auto& r : t.regions) {
    const int x = r.crossings.front();
    ++n[d.under_component(x)];
    ++n[d.over_component(x)];
  }
  return n;
}

}  // namespace twistvol
