#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "twistvol/diagram.hpp"

namespace twistvol {

/// A-smoothing joins slots (0,1) and (2,3); B joins (1,2) and (3,0).
enum class Smoothing { A, B };

inline const char* to_string(Smoothing s) { return s == Smoothing::A ? "A" : "B"; }
inline Smoothing opposite(Smoothing s) { return s == Smoothing::A ? Smoothing::B : Smoothing::A; }
/// The smoothing that closes corner c of a crossing (corner c lies between
/// slots c and c+1).
inline Smoothing closing_smoothing(int corner) { return corner % 2 == 0 ? Smoothing::A : Smoothing::B; }

struct StateCircles {
  Smoothing kind = Smoothing::A;
  /// Each circle as a cyclic list of arc indices; crossingless components
  /// appear as empty lists.
  std::vector<std::vector<int>> circles;
  std::vector<int> circle_of_arc;
  /// Per crossing, the circles through its two joins (first join contains
  /// slot 0 for A, slot 1 for B).
  std::vector<std::array<int, 2>> at_crossing;
  int count() const { return static_cast<int>(circles.size()); }
};

StateCircles smooth_all(const LinkDiagram& d, Smoothing kind);

/// Number of circles for an arbitrary state; bit x of `b_mask` set means
/// crossing x takes the B-smoothing.
int circle_count(const LinkDiagram& d, unsigned long long b_mask);

struct StateGraph {
  Smoothing kind = Smoothing::A;
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // one per crossing
  std::vector<bool> loop;
  std::vector<std::pair<int, int>> reduced;  // distinct unordered pairs
  int edge_count() const { return static_cast<int>(edges.size()); }
  int reduced_edge_count() const { return static_cast<int>(reduced.size()); }
  bool has_loop() const;
};

StateGraph state_graph(const LinkDiagram& d, Smoothing kind);
StateGraph state_graph(const StateCircles& s);

struct Adequacy {
  bool a_adequate = false;
  bool b_adequate = false;
  bool adequate() const { return a_adequate && b_adequate; }
};

Adequacy is_adequate(const LinkDiagram& d);

struct Classification {
  int v_bigon = 0, v_ngon = 0;
  int e_short = 0, e_long = 0;
  int e_short_reduced = 0, e_long_reduced = 0;
  /// Per region: the resolution on its long side; single-crossing regions
  /// have none and are short on both sides.
  std::vector<std::optional<Smoothing>> long_side;
  /// Bigon vertices as (kind, circle index).
  std::vector<std::pair<Smoothing, int>> bigon_vertices;
};

Classification classify(const LinkDiagram& d, const TwistDecomposition& t, const StateCircles& sa,
                        const StateCircles& sb);
Classification classify(const LinkDiagram& d, const TwistDecomposition& t);

struct TuraevEuler {
  int from_ngon = 0;    // v_ngon - tw
  int from_states = 0;  // v_A + v_B - c
  bool agree() const { return from_ngon == from_states; }
};

TuraevEuler turaev_euler(const LinkDiagram& d, const TwistDecomposition& t, const StateGraph& ga,
                         const StateGraph& gb, const Classification& cls);

struct Country {
  int provinces = 0;
  int red_edges = 0;
  int tw() const { return red_edges; }
  int chi() const { return provinces - red_edges; }
  int e_short_reduced = 0;
  /// e'_short(N) >= tw(N) + chi(N) - 1
  bool short_edge_bound() const { return e_short_reduced >= tw() + chi() - 1; }
};

struct Geography {
  int p_vertices = 0;
  int red_edges = 0;
  int black_edges = 0;
  int phi_components = 0;
  /// P-vertex count on each black component.
  std::vector<int> phi_sizes;
  std::vector<Country> countries;
  int chi = 0;
  int tw = 0;
  int country_count() const { return static_cast<int>(countries.size()); }
  /// n(D) <= 2 tw / 3 + 1, as 3 n <= 2 tw + 3
  bool country_bound() const { return 3 * country_count() <= 2 * tw + 3; }
  bool gated() const { return tw >= 2; }
  std::vector<std::string> warnings;
};

/// Requires every twist region to have at least two crossings.
Geography geography(const LinkDiagram& d, const TwistDecomposition& t);

}  // namespace twistvol
