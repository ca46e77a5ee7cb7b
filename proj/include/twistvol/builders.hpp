#pragma once

#include <array>
#include <string>
#include <vector>

#include "twistvol/diagram.hpp"

namespace twistvol {

/// Assembles a diagram from crossings and wires, then canonicalizes it into
/// PD form: arcs are numbered 1..E along the components and each quadruple
/// is rotated to start at its incoming under-strand.
class DiagramBuilder {
public:
  /// Returns the four slot nodes counterclockwise; slots 0 and 2 carry the
  /// under-strand.
  std::array<int, 4> add_crossing();
  int add_node();
  void join(int a, int b);
  void add_free_loop() { ++free_loops_; }
  /// Orientation hint: the strand leaves its crossing at this slot node.
  void prefer_outgoing(int slot_node) { hints_.push_back(slot_node); }

  LinkDiagram build(ParseOptions opts = {}) const;

private:
  struct Node {
    int crossing = -1;  // -1 for free nodes
    int position = -1;
    std::vector<int> wires;
  };
  std::vector<Node> nodes_;
  int crossings_ = 0;
  int free_loops_ = 0;
  std::vector<int> hints_;
};

/// Four-ended tangle inside a builder, ends named by compass corner.
struct Tangle {
  int nw, ne, sw, se;
};

class TangleBuilder {
public:
  /// Single crossing. Positive type: the SW-NE strand passes under.
  Tangle crossing(bool positive);
  /// n crossings side by side (horizontal twist), sign by n's sign.
  Tangle horizontal(int n);
  /// n crossings stacked (vertical twist).
  Tangle vertical(int n);
  Tangle sum(const Tangle& a, const Tangle& b);      // a beside b
  Tangle product(const Tangle& a, const Tangle& b);  // a above b
  LinkDiagram numerator(const Tangle& t, ParseOptions opts = {});
  LinkDiagram denominator(const Tangle& t, ParseOptions opts = {});
  DiagramBuilder& builder() { return b_; }

private:
  DiagramBuilder b_;
};

LinkDiagram unknot();
/// One-crossing kink with writhe `sign`.
LinkDiagram kink(int sign);
/// Closure of a braid word on `strands` strands; generator i > 0 is a
/// positive crossing between strands i and i+1, -i its inverse.
LinkDiagram braid_closure(int strands, const std::vector<int>& word, ParseOptions opts = {});
/// (2,n) torus link as the closure of sigma_1^n.
LinkDiagram torus_2n(int n);
/// Two-bridge link with continued-fraction blocks a_1..a_k (each >= 1),
/// drawn alternating.
LinkDiagram rational(const std::vector<int>& blocks);
/// Pretzel link with vertical twist columns; signs of the entries choose
/// the crossing handedness in each column.
LinkDiagram pretzel(const std::vector<int>& columns);
/// Connected sum along arc `label_a` of a and `label_b` of b (0 picks the
/// lowest label of each).
LinkDiagram connected_sum(const LinkDiagram& a, const LinkDiagram& b, int label_a = 0, int label_b = 0);

}  // namespace twistvol
