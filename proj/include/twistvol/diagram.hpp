#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twistvol/errors.hpp"

namespace twistvol {

/// A position around a crossing: slots 0..3 counterclockwise, slot 0 is the
/// incoming under-strand of the PD convention; slots 0/2 are under, 1/3 over.
struct Slot {
  int crossing = -1;
  int position = -1;
  bool operator==(const Slot&) const = default;
};

enum class ParseErrorKind {
  MalformedToken,
  ArcMultiplicity,
  NonSpherical,
  Disconnected,
  InconsistentOrientation,
  EmptyDiagram,
};

class PdParseError : public InputError {
public:
  PdParseError(ParseErrorKind kind, const std::string& what) : InputError(what), kind_(kind) {}
  ParseErrorKind kind() const { return kind_; }

private:
  ParseErrorKind kind_;
};

struct ParseOptions {
  /// Split (disconnected) diagrams are rejected unless this is set.
  bool allow_split = false;
};

/// One face of the projection graph: a cyclic list of arc sides plus the
/// crossing corners it touches. Corner c of a crossing lies between slots c
/// and c+1.
struct Face {
  struct Side {
    int arc;   // arc index
    int side;  // 0: traversed from ends[0] to ends[1], 1: reverse
  };
  struct Corner {
    int crossing;
    int corner;
  };
  std::vector<Side> sides;
  std::vector<Corner> corners;
  int degree() const { return static_cast<int>(sides.size()); }
};

/// Combinatorial map of a 4-valent plane graph with crossing data.
class LinkDiagram {
public:
  struct Arc {
    int label = 0;
    std::array<Slot, 2> ends{};  // ends[0] is the earlier slot in crossing order
    int component = -1;
    int head = 1;  // index into ends where the oriented arc arrives
  };
  struct Component {
    std::vector<int> arcs;  // traversal order; empty for crossingless loops
    bool reversed = false;  // relative to the PD-implied orientation
  };
  struct OrientationLine {
    int component;  // 1-based, as written
    bool reversed;
  };

  LinkDiagram() = default;

  static LinkDiagram parse(std::string_view text, ParseOptions opts = {});
  /// Build from quadruples directly; `free_loops` crossingless components;
  /// `lines` orientation overrides as in the text format.
  static LinkDiagram from_quadruples(std::vector<std::array<int, 4>> quads, int free_loops,
                                     std::vector<OrientationLine> lines, ParseOptions opts = {});

  std::string to_pd() const;

  int crossing_count() const { return static_cast<int>(quads_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  int component_count() const { return static_cast<int>(components_.size()); }
  int free_loop_count() const { return free_loops_; }
  bool connected() const { return connected_; }

  const std::vector<std::array<int, 4>>& quadruples() const { return quads_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<OrientationLine>& orientation_lines() const { return lines_; }
  const std::vector<int>& signs() const { return signs_; }

  /// Arc index attached at a slot.
  int arc_at(int crossing, int position) const { return slot_arc_[crossing][position]; }
  int arc_at(Slot s) const { return slot_arc_[s.crossing][s.position]; }
  /// The other endpoint of the arc leaving through `s`.
  Slot across(Slot s) const;
  /// Component passing under / over at a crossing.
  int under_component(int crossing) const;
  int over_component(int crossing) const;
  /// Slot where the oriented under-strand enters the crossing (0 or 2).
  int under_in(int crossing) const;
  int over_in(int crossing) const;

  /// Same underlying map with components reversed (0-based indices).
  LinkDiagram reversed(const std::vector<int>& components) const;
  /// Mirror image: all crossings switched, orientation kept.
  LinkDiagram mirror() const;
  /// Relabel arcs through `label_map` (old label -> new label, a bijection
  /// onto positive integers), keeping orientations.
  LinkDiagram relabeled(const std::vector<std::pair<int, int>>& label_map) const;

  bool operator==(const LinkDiagram& o) const {
    return quads_ == o.quads_ && free_loops_ == o.free_loops_ && heads_signature() == o.heads_signature();
  }

private:
  void build(ParseOptions opts);
  std::vector<int> heads_signature() const;
  /// Rebuild from new quadruples keeping the orientation given by per-label
  /// successor relations.
  static LinkDiagram rebuild_with_successors(std::vector<std::array<int, 4>> quads, int free_loops,
                                             const std::vector<std::pair<int, int>>& successors,
                                             ParseOptions opts);
  std::vector<std::pair<int, int>> successor_pairs() const;

  std::vector<std::array<int, 4>> quads_;
  int free_loops_ = 0;
  std::vector<OrientationLine> lines_;
  bool connected_ = true;

  std::vector<Arc> arcs_;
  std::vector<std::array<int, 4>> slot_arc_;
  std::vector<Component> components_;
  std::vector<int> signs_;
};

/// Faces of the projection graph. The 0-crossing unknot has two faces with
/// no sides. Split diagrams return the faces of each graph component.
std::vector<Face> faces(const LinkDiagram& d);

int writhe(const LinkDiagram& d);

/// Disjoint (split) union, arcs of `b` relabeled above those of `a`.
LinkDiagram split_union(const LinkDiagram& a, const LinkDiagram& b);

/// True iff no pair of distinct arcs disconnects the crossing graph into two
/// parts that each contain a crossing.
bool is_prime(const LinkDiagram& d);

/// Every component alternates over/under along its traversal.
bool is_alternating(const LinkDiagram& d);

struct TwistRegion {
  std::vector<int> crossings;  // chain order
  /// Linking bigon faces between consecutive crossings (a - 1 of them; the
  /// closing bigon of a cyclic chain is excluded from this list).
  std::vector<int> bigons;
  std::optional<int> closing_bigon;
  bool cyclic = false;
  int size() const { return static_cast<int>(crossings.size()); }
};

struct TwistDecomposition {
  std::vector<TwistRegion> regions;
  std::vector<int> region_of;  // crossing -> region index
  std::vector<Face> faces;
  int tw() const { return static_cast<int>(regions.size()); }
  int min_region_size() const;
};

class TwistDecompositionError : public InputError {
public:
  using InputError::InputError;
};

/// Groups crossings into maximal chains of bigons. Throws
/// TwistDecompositionError ("not twist-reducible decomposition") when a
/// crossing carries bigons at adjacent corners.
TwistDecomposition twist_regions(const LinkDiagram& d);

struct AlternationDiagnostic {
  int region;
  int bigon_face;
  std::string message;
};

/// Flags regions whose consecutive crossings do not form alternating
/// half-twists, i.e. some linking bigon has an arc that is over (or under)
/// at both of its ends.
std::vector<AlternationDiagnostic> validate_twist_alternation(const LinkDiagram& d,
                                                              const TwistDecomposition& t);

/// Number of twist regions visited by each component, counted with
/// multiplicity (each region contributes its two strands).
std::vector<int> component_region_counts(const LinkDiagram& d, const TwistDecomposition& t);

}  // namespace twistvol
