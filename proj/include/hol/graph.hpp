#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hol/error.hpp"

namespace hol {

struct EdgeStep {
  int edge = 0;
  bool forward = true;

  bool operator==(const EdgeStep& o) const { return edge == o.edge && forward == o.forward; }
  bool inverse_of(const EdgeStep& o) const { return edge == o.edge && forward != o.forward; }
  EdgeStep inverted() const { return {edge, !forward}; }
};

// Finite connected multigraph with named, directed edges (reverse traversal
// is the formal inverse). Self-loops and parallel edges are allowed.
struct Graph {
  struct Edge {
    std::string name;
    int tail = 0, head = 0;
  };

  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::map<std::string, int> vertex_index;
  std::map<std::string, int> edge_index;
  // Steps leaving each vertex (forward out of the tail, reverse out of the
  // head), sorted by edge name with forward first. BFS uses this order, so
  // spanning trees are reproducible.
  std::vector<std::vector<EdgeStep>> out;

  static std::shared_ptr<const Graph> make(
      const std::vector<std::string>& vertex_names,
      const std::vector<std::tuple<std::string, std::string, std::string>>& edge_triples);

  int vertex(const std::string& name) const;
  int edge(const std::string& name) const;
  int step_from(const EdgeStep& s) const { return s.forward ? edges[s.edge].tail : edges[s.edge].head; }
  int step_to(const EdgeStep& s) const { return s.forward ? edges[s.edge].head : edges[s.edge].tail; }
  bool same_structure(const Graph& o) const;
};

using GraphPtr = std::shared_ptr<const Graph>;

struct Walk {
  GraphPtr graph;
  int start = 0;
  std::vector<EdgeStep> steps;
  int end = 0;

  static Walk make(GraphPtr g, int start, std::vector<EdgeStep> steps);
  static Walk empty_at(GraphPtr g, int at);
  bool is_empty() const { return steps.empty(); }
  bool closed() const { return start == end; }
  std::size_t length() const { return steps.size(); }
  std::string str() const;  // walk literal, e.g. "x: a b~ c"
};

// w1 traversed first, then w2.
Walk compose(const Walk& second, const Walk& first);
Walk invert(const Walk& w);
bool walk_equal(const Walk& a, const Walk& b);

// Thin-equivalence class representative: the unique backtrack-free word.
struct ReducedWalk {
  Walk w;

  int start() const { return w.start; }
  int end() const { return w.end; }
  bool is_empty() const { return w.is_empty(); }
};

ReducedWalk reduce(const Walk& w);
bool reduced_equal(const ReducedWalk& a, const ReducedWalk& b);

// Breadth-first spanning tree with lexicographic tie-break; child_step[v] is
// the step taken from parent[v] into v.
struct SpanningTree {
  int root = 0;
  std::vector<int> parent;          // -1 at the root
  std::vector<EdgeStep> child_step; // valid where parent >= 0
  std::vector<int> depth;
  std::vector<char> in_tree;        // per edge
};

SpanningTree spanning_tree(const GraphPtr& g, int root);
ReducedWalk tree_path(const GraphPtr& g, const SpanningTree& t, int from, int to);

// Non-tree edges sorted by name; these index the free generators of the
// reduced loops at any base vertex.
std::vector<int> chord_edges(const GraphPtr& g, const SpanningTree& t);
// One loop at x per chord e: treepath(x -> tail e), e forward, treepath(head e -> x).
std::vector<ReducedWalk> chord_generators(const GraphPtr& g, const SpanningTree& t, int x);

// Letters +-(chord position + 1) in traversal order; tree steps contribute
// no letters.
std::vector<int> loop_decompose(const ReducedWalk& loop, const GraphPtr& g,
                                const std::vector<int>& chords, int x);
// Substitutes generator walks for letters; reduce of the result reproduces
// the decomposed loop.
Walk expand_word(const std::vector<int>& word, const std::vector<ReducedWalk>& generators,
                 const GraphPtr& g, int x);

// Incidence-preserving bijection pair (vertices, edges); orientation is
// preserved (tails map to tails).
struct GraphIso {
  GraphPtr src, dst;
  std::vector<int> vmap;
  std::vector<int> emap;

  int v(int i) const { return vmap[static_cast<std::size_t>(i)]; }
  EdgeStep e(const EdgeStep& s) const { return {emap[static_cast<std::size_t>(s.edge)], s.forward}; }
  Walk apply(const Walk& w) const;
  GraphIso inverse() const;
};

GraphIso identity_graph_iso(const GraphPtr& g);
GraphIso compose(const GraphIso& outer, const GraphIso& inner);
bool graph_iso_equal(const GraphIso& a, const GraphIso& b);
bool is_graph_iso(const GraphIso& iso);

// All isomorphisms src -> dst, deterministic order, degree-signature pruning.
std::vector<GraphIso> graph_isomorphisms(const GraphPtr& src, const GraphPtr& dst,
                                         std::size_t max_vertices = 10, std::size_t cap = 100000);

// Bundled desk-scale graphs.
GraphPtr theta_graph();        // 2 vertices, 3 parallel edges
GraphPtr figure_eight_graph(); // 1 vertex, 2 self-loops
GraphPtr path_graph(int n);
GraphPtr cycle_graph(int n);

}  // namespace hol
