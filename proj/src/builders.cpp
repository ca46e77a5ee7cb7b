#include "twistvol/builders.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

namespace twistvol {

std::array<int, 4> DiagramBuilder::add_crossing() {
  std::array<int, 4> out{};
  for (int p = 0; p < 4; ++p) {
    out[p] = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{crossings_, p, {}});
  }
  ++crossings_;
  return out;
}

int DiagramBuilder::add_node() {
  nodes_.push_back(Node{});
  return static_cast<int>(nodes_.size()) - 1;
}

void DiagramBuilder::join(int a, int b) {
  nodes_.at(a).wires.push_back(b);
  nodes_.at(b).wires.push_back(a);
}

LinkDiagram DiagramBuilder::build(ParseOptions opts) const {
  const int nn = static_cast<int>(nodes_.size());
  for (int i = 0; i < nn; ++i) {
    const std::size_t want = nodes_[i].crossing >= 0 ? 1 : 2;
    if (nodes_[i].wires.size() != want) throw InputError("builder: dangling or over-joined node");
  }
  int extra_loops = 0;
  // follow wires from each slot node to the slot node at the far end
  std::vector<std::array<int, 4>> partner(crossings_);
  std::vector<int> slot_node(static_cast<std::size_t>(crossings_) * 4);
  std::vector<bool> seen(nn, false);
  for (int i = 0; i < nn; ++i) {
    if (nodes_[i].crossing < 0) continue;
    slot_node[nodes_[i].crossing * 4 + nodes_[i].position] = i;
    if (seen[i]) continue;
    int prev = i, cur = nodes_[i].wires[0];
    seen[i] = true;
    while (nodes_[cur].crossing < 0) {
      seen[cur] = true;
      int next = nodes_[cur].wires[0] == prev ? nodes_[cur].wires[1] : nodes_[cur].wires[0];
      prev = cur;
      cur = next;
    }
    seen[cur] = true;
    partner[nodes_[i].crossing][nodes_[i].position] = nodes_[cur].crossing * 4 + nodes_[cur].position;
    partner[nodes_[cur].crossing][nodes_[cur].position] = nodes_[i].crossing * 4 + nodes_[i].position;
  }
  for (int i = 0; i < nn; ++i) {
    if (seen[i]) continue;
    // closed wire cycle with no crossings
    ++extra_loops;
    int prev = -1, cur = i;
    while (!seen[cur]) {
      seen[cur] = true;
      int next = nodes_[cur].wires[0] == prev ? nodes_[cur].wires[1] : nodes_[cur].wires[0];
      prev = cur;
      cur = next;
    }
  }

  std::set<int> outgoing;
  for (int h : hints_)
    if (nodes_[h].crossing >= 0) outgoing.insert(nodes_[h].crossing * 4 + nodes_[h].position);

  // label arcs along components; an arc is identified by its tail slot
  std::vector<int> label_at(static_cast<std::size_t>(crossings_) * 4, 0);
  std::vector<bool> head_at(static_cast<std::size_t>(crossings_) * 4, false);
  int next_label = 1;
  for (int s0 = 0; s0 < crossings_ * 4; ++s0) {
    if (label_at[s0]) continue;
    // pick the direction of this component from a hint if it has one
    std::vector<int> walk;
    int s = s0;
    do {
      walk.push_back(s);
      const int t = partner[s / 4][s % 4];
      s = (t / 4) * 4 + (t % 4 + 2) % 4;
    } while (s != s0);
    bool forward = true;
    std::set<int> along(walk.begin(), walk.end());
    for (int h : outgoing) {
      if (along.count(h)) break;
      const int t = partner[h / 4][h % 4];
      if (along.count(t)) {
        forward = false;
        break;
      }
    }
    if (!forward) {
      const int t = partner[s0 / 4][s0 % 4];
      walk.clear();
      s = t;
      do {
        walk.push_back(s);
        const int u = partner[s / 4][s % 4];
        s = (u / 4) * 4 + (u % 4 + 2) % 4;
      } while (s != t);
    }
    for (int tail : walk) {
      const int head = partner[tail / 4][tail % 4];
      label_at[tail] = label_at[head] = next_label++;
      head_at[head] = true;
    }
  }

  std::vector<std::array<int, 4>> quads(crossings_);
  for (int x = 0; x < crossings_; ++x) {
    const int rot = head_at[x * 4 + 0] ? 0 : 2;
    for (int i = 0; i < 4; ++i) quads[x][i] = label_at[x * 4 + (rot + i) % 4];
  }
  LinkDiagram d = LinkDiagram::from_quadruples(quads, free_loops_ + extra_loops, {}, opts);
  // components without under-passages get the orientation built here
  std::vector<int> flip;
  for (int c = 0; c < d.component_count(); ++c) {
    const auto& comp = d.components()[c];
    if (comp.arcs.empty()) continue;
    const auto& a = d.arcs()[comp.arcs[0]];
    const Slot h = a.ends[a.head];
    const int rot = head_at[h.crossing * 4 + 0] ? 0 : 2;
    if (!head_at[h.crossing * 4 + (h.position + rot) % 4]) flip.push_back(c);
  }
  return flip.empty() ? d : d.reversed(flip);
}

Tangle TangleBuilder::crossing(bool positive) {
  auto s = b_.add_crossing();
  // counterclockwise SW, SE, NE, NW when the SW-NE strand is under
  if (positive) return Tangle{s[3], s[2], s[0], s[1]};
  // under-strand SE-NW: counterclockwise SE, NE, NW, SW
  return Tangle{s[2], s[1], s[3], s[0]};
}

Tangle TangleBuilder::horizontal(int n) {
  if (n == 0) throw InputError("empty twist");
  Tangle t = crossing(n > 0);
  for (int i = 1; i < std::abs(n); ++i) t = sum(t, crossing(n > 0));
  return t;
}

Tangle TangleBuilder::vertical(int n) {
  if (n == 0) throw InputError("empty twist");
  Tangle t = crossing(n > 0);
  for (int i = 1; i < std::abs(n); ++i) t = product(t, crossing(n > 0));
  return t;
}

Tangle TangleBuilder::sum(const Tangle& a, const Tangle& b) {
  b_.join(a.ne, b.nw);
  b_.join(a.se, b.sw);
  return Tangle{a.nw, b.ne, a.sw, b.se};
}

Tangle TangleBuilder::product(const Tangle& a, const Tangle& b) {
  b_.join(a.sw, b.nw);
  b_.join(a.se, b.ne);
  return Tangle{a.nw, a.ne, b.sw, b.se};
}

LinkDiagram TangleBuilder::numerator(const Tangle& t, ParseOptions opts) {
  b_.join(t.nw, t.ne);
  b_.join(t.sw, t.se);
  return b_.build(opts);
}

LinkDiagram TangleBuilder::denominator(const Tangle& t, ParseOptions opts) {
  b_.join(t.nw, t.sw);
  b_.join(t.ne, t.se);
  return b_.build(opts);
}

LinkDiagram unknot() { return LinkDiagram::from_quadruples({}, 1, {}); }

LinkDiagram kink(int sign) {
  // X(1,1,2,2) is the positive kink
  LinkDiagram d = LinkDiagram::parse("X(1,1,2,2)");
  return sign > 0 ? d : d.mirror();
}

LinkDiagram braid_closure(int strands, const std::vector<int>& word, ParseOptions opts) {
  if (strands < 1) throw InputError("braid needs at least one strand");
  DiagramBuilder b;
  std::vector<int> bottom(strands), top(strands);
  for (int i = 0; i < strands; ++i) bottom[i] = top[i] = b.add_node();
  for (int g : word) {
    const int i = std::abs(g) - 1;
    if (g == 0 || i + 1 >= strands) throw InputError("braid generator out of range");
    auto s = b.add_crossing();
    int sw, se, ne, nw;
    if (g > 0) {
      // SE-NW under, counterclockwise SE, NE, NW, SW
      se = s[0], ne = s[1], nw = s[2], sw = s[3];
    } else {
      sw = s[0], se = s[1], ne = s[2], nw = s[3];
    }
    b.join(top[i], sw);
    b.join(top[i + 1], se);
    b.prefer_outgoing(nw);
    b.prefer_outgoing(ne);
    top[i] = nw;
    top[i + 1] = ne;
  }
  for (int i = 0; i < strands; ++i) {
    if (top[i] == bottom[i]) {
      // strand never crossed: close its free node into a loop
      const int m = b.add_node();
      b.join(bottom[i], m);
      b.join(m, bottom[i]);
      continue;
    }
    b.join(top[i], bottom[i]);
  }
  return b.build(opts);
}

LinkDiagram torus_2n(int n) {
  std::vector<int> w(std::abs(n), n > 0 ? 1 : -1);
  return braid_closure(2, w);
}

namespace {

LinkDiagram rational_with_signs(const std::vector<int>& blocks, unsigned mask) {
  TangleBuilder tb;
  Tangle t{};
  bool last_vertical = false;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int a = (mask >> i & 1u) ? -blocks[i] : blocks[i];
    if (i == 0) {
      t = tb.horizontal(a);
    } else if (i % 2 == 1) {
      t = tb.product(t, tb.vertical(a));
      last_vertical = true;
    } else {
      t = tb.sum(t, tb.horizontal(a));
      last_vertical = false;
    }
  }
  return last_vertical ? tb.denominator(t) : tb.numerator(t);
}

}  // namespace

LinkDiagram rational(const std::vector<int>& blocks) {
  if (blocks.empty()) throw InputError("rational link needs at least one block");
  for (int a : blocks)
    if (a < 1) throw InputError("rational blocks must be positive");
  for (unsigned mask = 0; mask < (1u << blocks.size()); ++mask) {
    LinkDiagram d = rational_with_signs(blocks, mask);
    if (is_alternating(d)) return d;
  }
  throw InputError("no alternating sign pattern found");
}

LinkDiagram pretzel(const std::vector<int>& columns) {
  if (columns.empty()) throw InputError("pretzel needs at least one column");
  TangleBuilder tb;
  Tangle t = tb.vertical(columns[0]);
  for (std::size_t i = 1; i < columns.size(); ++i) t = tb.sum(t, tb.vertical(columns[i]));
  return tb.numerator(t);
}

LinkDiagram connected_sum(const LinkDiagram& a, const LinkDiagram& b, int label_a, int label_b) {
  if (a.crossing_count() == 0) return b;
  if (b.crossing_count() == 0) return a;
  DiagramBuilder bld;
  auto load = [&](const LinkDiagram& d, int skip_label, int& tail_node, int& head_node) {
    std::vector<std::array<int, 4>> nodes;
    for (int x = 0; x < d.crossing_count(); ++x) nodes.push_back(bld.add_crossing());
    if (skip_label == 0) skip_label = d.arcs().front().label;
    bool found = false;
    for (const auto& arc : d.arcs()) {
      const Slot t = arc.ends[1 - arc.head], h = arc.ends[arc.head];
      const int tn = nodes[t.crossing][t.position], hn = nodes[h.crossing][h.position];
      bld.prefer_outgoing(tn);
      if (arc.label == skip_label) {
        tail_node = tn;
        head_node = hn;
        found = true;
        continue;
      }
      bld.join(tn, hn);
    }
    if (!found) throw InputError("connected sum: no arc " + std::to_string(skip_label));
    for (int k = 0; k < d.free_loop_count(); ++k) bld.add_free_loop();
  };
  int ta = -1, ha = -1, tb = -1, hb = -1;
  load(a, label_a, ta, ha);
  load(b, label_b, tb, hb);
  bld.join(ta, hb);
  bld.join(tb, ha);
  return bld.build({!a.connected() || !b.connected()});
}

}  // namespace twistvol
