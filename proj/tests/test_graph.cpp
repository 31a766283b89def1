#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hol/graph.hpp"
#include "hol/rng.hpp"
#include "hol/suites.hpp"

using namespace hol;

namespace {

// Oracle: cancel the first adjacent inverse pair, repeat to a fixpoint.
std::vector<EdgeStep> scan_reduce_oracle(std::vector<EdgeStep> steps) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
      if (steps[i].inverse_of(steps[i + 1])) {
        steps.erase(steps.begin() + static_cast<long>(i), steps.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return steps;
}

// Oracle: cancellations applied in every possible order must reach a single
// fixpoint (confluence).
void all_order_fixpoints(const std::vector<EdgeStep>& steps, std::set<std::string>& fixpoints) {
  bool any = false;
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    if (steps[i].inverse_of(steps[i + 1])) {
      any = true;
      std::vector<EdgeStep> next = steps;
      next.erase(next.begin() + static_cast<long>(i), next.begin() + static_cast<long>(i) + 2);
      all_order_fixpoints(next, fixpoints);
    }
  }
  if (!any) {
    std::string key;
    for (const auto& s : steps) key += std::to_string(s.edge) + (s.forward ? "+" : "-");
    fixpoints.insert(key);
  }
}

Walk step_walk(const GraphPtr& g, const std::string& vertex,
               const std::vector<std::pair<std::string, bool>>& named) {
  std::vector<EdgeStep> steps;
  for (const auto& [name, fwd] : named) steps.push_back({g->edge(name), fwd});
  return Walk::make(g, g->vertex(vertex), std::move(steps));
}

}  // namespace

TEST_CASE("graph construction validates names, endpoints, connectivity") {
  CHECK_THROWS_AS(Graph::make({"x", "x"}, {}), ValidationError);
  CHECK_THROWS_AS(Graph::make({"x"}, {{"a", "x", "nope"}}), ValidationError);
  CHECK_THROWS_AS(Graph::make({"x", "y"}, {{"a", "x", "x"}}), ValidationError);  // disconnected
  CHECK_THROWS_AS(Graph::make({"x", "y"}, {{"a", "x", "y"}, {"a", "y", "x"}}), ValidationError);
  GraphPtr g = theta_graph();
  CHECK(g->vertices.size() == 2);
  CHECK(g->edges.size() == 3);
}

TEST_CASE("compose and invert: frozen examples") {
  GraphPtr g = path_graph(3);  // v0 -e0- v1 -e1- v2
  Walk idx = Walk::empty_at(g, 0);
  CHECK(walk_equal(compose(idx, idx), idx));

  Walk a = step_walk(g, "v0", {{"e0", true}});
  Walk b = step_walk(g, "v1", {{"e1", true}});
  Walk ab = compose(b, a);
  CHECK(ab.start == 0);
  CHECK(ab.end == 2);
  CHECK(ab.length() == 2);
  CHECK_THROWS_AS(compose(a, b), PreconditionError);

  Walk inv = invert(ab);
  CHECK(inv.start == 2);
  CHECK(inv.end == 0);
  CHECK(inv.steps[0].edge == g->edge("e1"));
  CHECK_FALSE(inv.steps[0].forward);
  CHECK(walk_equal(invert(invert(ab)), ab));

  CHECK(reduce(compose(invert(ab), ab)).is_empty());
}

TEST_CASE("reduce: frozen examples") {
  GraphPtr g = figure_eight_graph();
  Walk w1 = step_walk(g, "x", {{"a", true}, {"a", false}});
  CHECK(reduce(w1).is_empty());
  Walk w2 = step_walk(g, "x", {{"a", true}, {"b", true}, {"b", false}, {"a", true}});
  ReducedWalk r2 = reduce(w2);
  CHECK(r2.w.length() == 2);
  CHECK(r2.w.steps[0].edge == g->edge("a"));
  CHECK(r2.w.steps[1].edge == g->edge("a"));
}

TEST_CASE("reduce matches the cancellation oracles on seeded random walks") {
  Rng rng(404);
  for (int t = 0; t < 500; ++t) {
    GraphPtr g = random_connected_graph(rng, 6);
    int from = static_cast<int>(rng.below(g->vertices.size()));
    Walk w = random_walk_from(rng, g, from, rng.range(0, 40));
    ReducedWalk r = reduce(w);
    CHECK(r.w.steps == scan_reduce_oracle(w.steps));
    for (std::size_t i = 0; i + 1 < r.w.steps.size(); ++i)
      CHECK_FALSE(r.w.steps[i].inverse_of(r.w.steps[i + 1]));
  }
  // Confluence: every cancellation order reaches the same fixpoint.
  for (int t = 0; t < 60; ++t) {
    GraphPtr g = random_connected_graph(rng, 4);
    Walk w = random_walk_from(rng, g, 0, rng.range(0, 12));
    std::set<std::string> fixpoints;
    all_order_fixpoints(w.steps, fixpoints);
    CHECK(fixpoints.size() == 1);
  }
}

TEST_CASE("reduce respects composition (congruence properties)") {
  Rng rng(77);
  for (int t = 0; t < 500; ++t) {
    GraphPtr g = random_connected_graph(rng, 6);
    SpanningTree tree = spanning_tree(g, 0);
    int a = static_cast<int>(rng.below(g->vertices.size()));
    int b = static_cast<int>(rng.below(g->vertices.size()));
    Walk w1 = random_walk_between(rng, g, tree, a, b, rng.range(0, 8));
    Walk w2 = random_walk_from(rng, g, b, rng.range(0, 8));
    CHECK(walk_equal(reduce(compose(w2, w1)).w, reduce(compose(reduce(w2).w, reduce(w1).w)).w));
    CHECK(reduce(compose(invert(w1), w1)).is_empty());
  }
}

TEST_CASE("spanning_tree: frozen shapes and determinism") {
  GraphPtr single = Graph::make({"x"}, {{"a", "x", "x"}});
  SpanningTree t0 = spanning_tree(single, 0);
  CHECK(chord_edges(single, t0) == std::vector<int>{0});

  GraphPtr p3 = path_graph(3);
  SpanningTree t1 = spanning_tree(p3, 0);
  CHECK(chord_edges(p3, t1).empty());
  CHECK(t1.in_tree[0]);
  CHECK(t1.in_tree[1]);

  GraphPtr theta = theta_graph();
  SpanningTree t2 = spanning_tree(theta, 0);
  int in_tree = 0;
  for (char c : t2.in_tree) in_tree += c;
  CHECK(in_tree == 1);
  CHECK(chord_edges(theta, t2).size() == 2);
  // Lexicographic tie-break puts edge "a" in the tree.
  CHECK(t2.in_tree[static_cast<std::size_t>(theta->edge("a"))]);

  SpanningTree t3 = spanning_tree(theta, 0);
  CHECK(t2.parent == t3.parent);
  for (std::size_t i = 0; i < t2.child_step.size(); ++i) CHECK(t2.child_step[i] == t3.child_step[i]);
}

TEST_CASE("tree_path connects endpoints and is reduced") {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    GraphPtr g = random_connected_graph(rng, 10);
    SpanningTree tree = spanning_tree(g, static_cast<int>(rng.below(g->vertices.size())));
    int a = static_cast<int>(rng.below(g->vertices.size()));
    int b = static_cast<int>(rng.below(g->vertices.size()));
    ReducedWalk p = tree_path(g, tree, a, b);
    CHECK(p.start() == a);
    CHECK(p.end() == b);
    CHECK(walk_equal(p.w, reduce(p.w).w));
    for (const auto& s : p.w.steps) CHECK(tree.in_tree[static_cast<std::size_t>(s.edge)]);
  }
}

TEST_CASE("chord_generators: frozen examples") {
  GraphPtr p3 = path_graph(3);
  SpanningTree t1 = spanning_tree(p3, 0);
  CHECK(chord_generators(p3, t1, 0).empty());

  GraphPtr fig = figure_eight_graph();
  SpanningTree t2 = spanning_tree(fig, 0);
  auto gens = chord_generators(fig, t2, 0);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].w.length() == 1);
  CHECK(gens[0].w.steps[0].edge == fig->edge("a"));

  GraphPtr theta = theta_graph();
  SpanningTree t3 = spanning_tree(theta, 0);
  auto tgens = chord_generators(theta, t3, 0);
  REQUIRE(tgens.size() == 2);
  for (const auto& gen : tgens) {
    CHECK(gen.start() == 0);
    CHECK(gen.end() == 0);
    CHECK(gen.w.length() == 2);
  }
}

TEST_CASE("chord generator count is |E| - |V| + 1") {
  Rng rng(55);
  for (int t = 0; t < 200; ++t) {
    GraphPtr g = random_connected_graph(rng, 10);
    SpanningTree tree = spanning_tree(g, 0);
    CHECK(chord_edges(g, tree).size() == g->edges.size() - g->vertices.size() + 1);
  }
}

TEST_CASE("loop_decompose: frozen examples and round trip") {
  GraphPtr fig = figure_eight_graph();
  SpanningTree tree = spanning_tree(fig, 0);
  auto chords = chord_edges(fig, tree);
  auto gens = chord_generators(fig, tree, 0);

  CHECK(loop_decompose(reduce(Walk::empty_at(fig, 0)), fig, chords, 0).empty());
  CHECK(loop_decompose(gens[0], fig, chords, 0) == std::vector<int>{1});
  CHECK(loop_decompose(reduce(invert(gens[1].w)), fig, chords, 0) == std::vector<int>{-2});

  Rng rng(808);
  for (int t = 0; t < 500; ++t) {
    GraphPtr g = random_connected_graph(rng, 12);
    int x = static_cast<int>(rng.below(g->vertices.size()));
    SpanningTree tr = spanning_tree(g, x);
    auto ch = chord_edges(g, tr);
    auto gn = chord_generators(g, tr, x);
    ReducedWalk loop = reduce(random_walk_between(rng, g, tr, x, x, rng.range(0, 14)));
    std::vector<int> word = loop_decompose(loop, g, ch, x);
    Walk expanded = expand_word(word, gn, g, x);
    CHECK(walk_equal(reduce(expanded).w, loop.w));
  }
}

TEST_CASE("free generation: decomposing and re-expanding theta loops") {
  GraphPtr theta = theta_graph();
  SpanningTree tree = spanning_tree(theta, 0);
  auto chords = chord_edges(theta, tree);
  auto gens = chord_generators(theta, tree, 0);
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    ReducedWalk loop = reduce(random_walk_between(rng, theta, tree, 0, 0, rng.range(0, 12)));
    Walk expanded = expand_word(loop_decompose(loop, theta, chords, 0), gens, theta, 0);
    CHECK(walk_equal(reduce(expanded).w, loop.w));
  }
}

TEST_CASE("loop_decompose rejects a loop based elsewhere") {
  GraphPtr theta = theta_graph();
  SpanningTree tree = spanning_tree(theta, 0);
  auto chords = chord_edges(theta, tree);
  CHECK_THROWS_AS(
      loop_decompose(reduce(step_walk(theta, "y", {{"a", false}, {"b", true}})), theta, chords, 0),
      PreconditionError);
  CHECK_NOTHROW(loop_decompose(tree_path(theta, tree, 1, 1), theta, chords, 1));
}

TEST_CASE("graph isomorphisms: frozen counts") {
  GraphPtr theta = theta_graph();
  // Three parallel edges permute freely; vertices are pinned by orientation.
  auto autos = graph_isomorphisms(theta, theta);
  CHECK(autos.size() == 6);
  for (const auto& iso : autos) CHECK(is_graph_iso(iso));

  CHECK(graph_isomorphisms(theta, path_graph(2)).empty());
  CHECK(graph_isomorphisms(figure_eight_graph(), figure_eight_graph()).size() == 2);

  GraphPtr big = path_graph(11);
  CHECK_THROWS_AS(graph_isomorphisms(big, big), BoundsError);
}

TEST_CASE("graph isomorphisms find a random relabeling") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    GraphPtr g = random_connected_graph(rng, 6);
    GraphIso relabel = random_relabeling(rng, g);
    CHECK(is_graph_iso(relabel));
    auto found = graph_isomorphisms(g, relabel.dst);
    CHECK(!found.empty());
    bool witnessed = false;
    for (const auto& iso : found)
      if (graph_iso_equal(iso, relabel)) witnessed = true;
    CHECK(witnessed);
  }
}

TEST_CASE("graph iso compose, inverse, walk transport") {
  Rng rng(23);
  GraphPtr g = theta_graph();
  GraphIso relabel = random_relabeling(rng, g);
  GraphIso round = compose(relabel.inverse(), relabel);
  CHECK(graph_iso_equal(round, identity_graph_iso(g)));
  Walk w = step_walk(g, "x", {{"a", true}, {"b", false}, {"c", true}});
  Walk mapped = relabel.apply(w);
  CHECK(mapped.length() == 3);
  CHECK(walk_equal(relabel.inverse().apply(mapped), w));
}
