#include "twistvol/corpus.hpp"

#include "twistvol/builders.hpp"

namespace twistvol {

namespace {

const char* kTrefoil = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

std::vector<CorpusEntry> build_corpus() {
  const LinkDiagram trefoil = LinkDiagram::parse(kTrefoil);
  const LinkDiagram fig8 = braid_closure(3, {1, -2, 1, -2});
  std::vector<CorpusEntry> c;
  auto add = [&](std::string name, std::string family, LinkDiagram d) {
    c.push_back({std::move(name), std::move(family), std::move(d)});
  };
  add("unknot", "trivial", unknot());
  add("kink+", "trivial", kink(1));
  add("kink-", "trivial", kink(-1));
  add("unknot-r1r1", "trivial", connected_sum(kink(1), kink(-1)));
  add("unlink-r2", "trivial", pretzel({1, -1}));
  add("hopf", "torus", torus_2n(2));
  add("hopf-mirror", "torus", torus_2n(2).mirror());
  add("trefoil", "torus", trefoil);
  add("trefoil-mirror", "torus", trefoil.mirror());
  add("T(2,4)", "torus", torus_2n(4));
  add("T(2,5)", "torus", torus_2n(5));
  add("T(2,7)", "torus", torus_2n(7));
  add("T(3,3)", "torus", braid_closure(3, {1, 2, 1, 2, 1, 2}));
  add("T(3,4)", "torus", braid_closure(3, {1, 2, 1, 2, 1, 2, 1, 2}));
  add("figure-8", "braid", fig8);
  add("hopf+loop-braid", "braid", braid_closure(3, {1, 1}, {true}));
  add("C(2,2)", "rational", rational({2, 2}));
  add("C(3,2)", "rational", rational({3, 2}));
  add("C(4,2)", "rational", rational({4, 2}));
  add("C(5,2)", "rational", rational({5, 2}));
  add("C(6,2)", "rational", rational({6, 2}));
  add("C(3,3)", "rational", rational({3, 3}));
  add("C(4,3)", "rational", rational({4, 3}));
  add("C(2,3,2)", "rational", rational({2, 3, 2}));
  add("C(3,3,3)", "rational", rational({3, 3, 3}));
  add("C(2,2,2,2)", "rational", rational({2, 2, 2, 2}));
  add("P(3,3)", "pretzel", pretzel({3, 3}));
  add("P(2,2,2)", "pretzel", pretzel({2, 2, 2}));
  add("P(3,3,3)", "pretzel", pretzel({3, 3, 3}));
  add("P(-2,3,3)", "pretzel", pretzel({-2, 3, 3}));
  add("P(-2,3,5)", "pretzel", pretzel({-2, 3, 5}));
  add("P(2,2,-2,-2)", "pretzel", pretzel({2, 2, -2, -2}));
  add("P(3,3,-2,-2)", "pretzel", pretzel({3, 3, -2, -2}));
  add("P(3,3,-3,-3)", "pretzel", pretzel({3, 3, -3, -3}));
  add("trefoil#trefoil", "composite", connected_sum(trefoil, trefoil));
  add("square", "composite", connected_sum(trefoil, trefoil.mirror()));
  add("trefoil#figure-8", "composite", connected_sum(trefoil, fig8));
  add("trefoil+hopf", "split", split_union(trefoil, torus_2n(2)));
  add("figure-8+unknot", "split", split_union(fig8, unknot()));
  return c;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = build_corpus();
  return c;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw InputError("unknown corpus diagram '" + name + "'");
}

}  // namespace twistvol
