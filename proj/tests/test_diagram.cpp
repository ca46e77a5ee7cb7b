#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "twistvol/builders.hpp"
#include "twistvol/corpus.hpp"
#include "twistvol/diagram.hpp"

using namespace twistvol;

namespace {

const char* kTrefoil = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const char* kFigure8 = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

ParseErrorKind parse_kind(const std::string& text, ParseOptions opts = {}) {
  try {
    LinkDiagram::parse(text, opts);
  } catch (const PdParseError& e) {
    return e.kind();
  }
  FAIL("parse succeeded: " << text);
  return ParseErrorKind::MalformedToken;
}

// Faces traced straight from the quadruples: leave slot i of a crossing
// along its arc, arrive at the other end, turn to the previous slot there.
int faces_from_quads(const LinkDiagram& d) {
  std::map<int, std::vector<std::pair<int, int>>> ends;
  const std::string pd = d.to_pd();
  const LinkDiagram again = LinkDiagram::parse(pd, {!d.connected()});
  const int n = again.crossing_count();
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < 4; ++i) ends[again.arc_at(c, i)].push_back({c, i});
  std::vector<std::array<bool, 4>> used(n, {false, false, false, false});
  int count = 0;
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < 4; ++i) {
      if (used[c][i]) continue;
      ++count;
      int cc = c, ii = i;
      while (!used[cc][ii]) {
        used[cc][ii] = true;
        const auto& e = ends[again.arc_at(cc, ii)];
        auto other = e[0] == std::pair{cc, ii} ? e[1] : e[0];
        cc = other.first;
        ii = (other.second + 3) % 4;
      }
    }
  return count;
}

}  // namespace

TEST_CASE("trefoil parses with the expected structure") {
  const LinkDiagram d = LinkDiagram::parse(kTrefoil);
  CHECK(d.crossing_count() == 3);
  CHECK(d.component_count() == 1);
  CHECK(d.arc_count() == 6);
  CHECK(d.connected());
  CHECK(writhe(d) == -3);
  CHECK(writhe(d.mirror()) == 3);
  CHECK(is_alternating(d));
  CHECK(is_prime(d));
}

TEST_CASE("serializer round-trips every corpus diagram") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    const ParseOptions opts{!e.diagram.connected()};
    const LinkDiagram back = LinkDiagram::parse(e.diagram.to_pd(), opts);
    CHECK(back == e.diagram);
    CHECK(back.to_pd() == e.diagram.to_pd());
  }
}

TEST_CASE("comments, whitespace and orientation lines") {
  const LinkDiagram a = LinkDiagram::parse("% trefoil\nX(1,4,2,5)\n\tX(3,6,4,1)   X(5,2,6,3) % end\n");
  CHECK(a == LinkDiagram::parse(kTrefoil));
  const LinkDiagram hopf = LinkDiagram::parse("X(1,3,2,4) X(3,1,4,2)");
  const LinkDiagram flipped = LinkDiagram::parse("X(1,3,2,4) X(3,1,4,2) O(2:-)");
  CHECK(writhe(hopf) == -writhe(flipped));
  CHECK(LinkDiagram::parse(flipped.to_pd()) == flipped);
}

TEST_CASE("parse errors carry their kind") {
  CHECK(parse_kind("X(1,2,3)") == ParseErrorKind::MalformedToken);
  CHECK(parse_kind("Y(1,2,3,4)") == ParseErrorKind::MalformedToken);
  CHECK(parse_kind("X(1,1,1,2)") == ParseErrorKind::ArcMultiplicity);
  CHECK(parse_kind("") == ParseErrorKind::EmptyDiagram);
  CHECK(parse_kind("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) X(7,9,8,10) X(9,7,10,8)") == ParseErrorKind::Disconnected);
  CHECK_NOTHROW(LinkDiagram::parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) X(7,9,8,10) X(9,7,10,8)", {true}));
}

TEST_CASE("face count matches Euler characteristic and an independent trace") {
  for (const auto& e : corpus()) {
    const LinkDiagram& d = e.diagram;
    if (!d.connected() || d.crossing_count() == 0) continue;
    CAPTURE(e.name);
    const auto fs = faces(d);
    CHECK(static_cast<int>(fs.size()) == d.crossing_count() + 2);
    int degrees = 0;
    for (const auto& f : fs) degrees += f.degree();
    CHECK(degrees == 4 * d.crossing_count());
    CHECK(faces_from_quads(d) == d.crossing_count() + 2);
  }
}

TEST_CASE("twist regions") {
  SUBCASE("trefoil is one cyclic region") {
    const TwistDecomposition t = twist_regions(LinkDiagram::parse(kTrefoil));
    CHECK(t.tw() == 1);
    CHECK(t.regions[0].size() == 3);
    CHECK(t.regions[0].cyclic);
  }
  SUBCASE("figure-8 has two regions of two") {
    const TwistDecomposition t = twist_regions(LinkDiagram::parse(kFigure8));
    CHECK(t.tw() == 2);
    CHECK(t.min_region_size() == 2);
  }
  SUBCASE("two-bridge and pretzel families") {
    CHECK(twist_regions(rational({3, 2})).tw() == 2);
    CHECK(twist_regions(rational({4, 3})).min_region_size() == 3);
    const TwistDecomposition p = twist_regions(pretzel({3, 3, 3}));
    CHECK(p.tw() == 3);
    CHECK(p.min_region_size() == 3);
    CHECK(twist_regions(torus_2n(7)).tw() == 1);
  }
  SUBCASE("crossing and bigon counts over the corpus") {
    for (const auto& e : corpus()) {
      CAPTURE(e.name);
      const TwistDecomposition t = twist_regions(e.diagram);
      int sum = 0, bigons = 0;
      for (const auto& r : t.regions) {
        sum += r.size();
        bigons += static_cast<int>(r.bigons.size()) + (r.closing_bigon ? 1 : 0);
      }
      CHECK(sum == e.diagram.crossing_count());
      int expected = 0;
      for (const auto& r : t.regions) expected += r.cyclic ? r.size() : r.size() - 1;
      CHECK(bigons == expected);
      for (int c = 0; c < e.diagram.crossing_count(); ++c) CHECK(t.region_of[c] >= 0);
    }
  }
}

TEST_CASE("builders") {
  CHECK(writhe(torus_2n(5)) == 5);
  CHECK(writhe(torus_2n(-3)) == -3);
  CHECK(torus_2n(4).component_count() == 2);
  CHECK(kink(1).crossing_count() == 1);
  CHECK(writhe(kink(-1)) == -1);
  CHECK(unknot().free_loop_count() == 1);
  const LinkDiagram t = LinkDiagram::parse(kTrefoil);
  const LinkDiagram sum = connected_sum(t, t);
  CHECK(sum.crossing_count() == 6);
  CHECK(sum.component_count() == 1);
  CHECK_FALSE(is_prime(sum));
  const LinkDiagram split = split_union(t, LinkDiagram::parse(kFigure8));
  CHECK_FALSE(split.connected());
  CHECK(split.component_count() == 2);
  CHECK(braid_closure(3, {1, -2, 1, -2}).component_count() == 1);
  CHECK(braid_closure(3, {1, 2, 1, 2, 1, 2}).component_count() == 3);
}

TEST_CASE("component region counts") {
  const LinkDiagram hopf = corpus_entry("hopf").diagram;
  const auto counts = component_region_counts(hopf, twist_regions(hopf));
  REQUIRE(counts.size() == 2);
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 1);
}
