#include "hol/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace hol {

std::shared_ptr<const Graph> Graph::make(
    const std::vector<std::string>& vertex_names,
    const std::vector<std::tuple<std::string, std::string, std::string>>& edge_triples) {
  auto g = std::make_shared<Graph>();
  if (vertex_names.empty()) throw ValidationError("graph needs at least one vertex");
  g->vertices = vertex_names;
  for (std::size_t i = 0; i < vertex_names.size(); ++i) {
    if (!g->vertex_index.emplace(vertex_names[i], static_cast<int>(i)).second)
      throw ValidationError("duplicate vertex name: " + vertex_names[i]);
  }
  for (const auto& [name, tail, head] : edge_triples) {
    auto ti = g->vertex_index.find(tail);
    auto hi = g->vertex_index.find(head);
    if (ti == g->vertex_index.end()) throw ValidationError("edge " + name + ": unknown tail " + tail);
    if (hi == g->vertex_index.end()) throw ValidationError("edge " + name + ": unknown head " + head);
    if (!g->edge_index.emplace(name, static_cast<int>(g->edges.size())).second)
      throw ValidationError("duplicate edge name: " + name);
    g->edges.push_back({name, ti->second, hi->second});
  }
  g->out.assign(g->vertices.size(), {});
  for (const auto& [name, idx] : g->edge_index) {
    const Graph::Edge& e = g->edges[static_cast<std::size_t>(idx)];
    g->out[static_cast<std::size_t>(e.tail)].push_back({idx, true});
    g->out[static_cast<std::size_t>(e.head)].push_back({idx, false});
  }
  // edge_index iteration is name-sorted; keep forward before reverse per name.
  for (auto& lst : g->out)
    std::stable_sort(lst.begin(), lst.end(), [&](const EdgeStep& a, const EdgeStep& b) {
      const std::string& na = g->edges[static_cast<std::size_t>(a.edge)].name;
      const std::string& nb = g->edges[static_cast<std::size_t>(b.edge)].name;
      return na != nb ? na < nb : (a.forward && !b.forward);
    });

  // Connectivity in the undirected sense.
  std::vector<char> seen(g->vertices.size(), 0);
  std::deque<int> todo{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop_front();
    for (const auto& s : g->out[static_cast<std::size_t>(v)]) {
      int u = g->step_to(s);
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        todo.push_back(u);
      }
    }
  }
  if (count != g->vertices.size()) throw ValidationError("graph is not connected");
  return g;
}

int Graph::vertex(const std::string& name) const {
  auto it = vertex_index.find(name);
  if (it == vertex_index.end()) throw PreconditionError("unknown vertex: " + name);
  return it->second;
}

int Graph::edge(const std::string& name) const {
  auto it = edge_index.find(name);
  if (it == edge_index.end()) throw PreconditionError("unknown edge: " + name);
  return it->second;
}

bool Graph::same_structure(const Graph& o) const {
  if (vertices != o.vertices) return false;
  if (edges.size() != o.edges.size()) return false;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name != o.edges[i].name || edges[i].tail != o.edges[i].tail ||
        edges[i].head != o.edges[i].head)
      return false;
  return true;
}

Walk Walk::make(GraphPtr g, int start, std::vector<EdgeStep> steps) {
  if (!g) throw PreconditionError("walk without graph");
  if (start < 0 || start >= static_cast<int>(g->vertices.size()))
    throw PreconditionError("walk start vertex out of range");
  int at = start;
  for (const auto& s : steps) {
    if (s.edge < 0 || s.edge >= static_cast<int>(g->edges.size()))
      throw PreconditionError("walk step references unknown edge");
    if (g->step_from(s) != at)
      throw PreconditionError("walk steps are not endpoint-compatible at vertex " +
                              g->vertices[static_cast<std::size_t>(at)]);
    at = g->step_to(s);
  }
  Walk w;
  w.graph = std::move(g);
  w.start = start;
  w.steps = std::move(steps);
  w.end = at;
  return w;
}

Walk Walk::empty_at(GraphPtr g, int at) { return make(std::move(g), at, {}); }

std::string Walk::str() const {
  std::ostringstream os;
  os << graph->vertices[static_cast<std::size_t>(start)] << ":";
  for (const auto& s : steps) {
    os << " " << graph->edges[static_cast<std::size_t>(s.edge)].name;
    if (!s.forward) os << "~";
  }
  return os.str();
}

Walk compose(const Walk& second, const Walk& first) {
  if (first.graph.get() != second.graph.get() && !first.graph->same_structure(*second.graph))
    throw PreconditionError("compose: walks on different graphs");
  if (first.end != second.start)
    throw PreconditionError("compose: end of first walk (" +
                            first.graph->vertices[static_cast<std::size_t>(first.end)] +
                            ") differs from start of second (" +
                            second.graph->vertices[static_cast<std::size_t>(second.start)] + ")");
  std::vector<EdgeStep> steps = first.steps;
  steps.insert(steps.end(), second.steps.begin(), second.steps.end());
  return Walk::make(first.graph, first.start, std::move(steps));
}

Walk invert(const Walk& w) {
  std::vector<EdgeStep> steps(w.steps.rbegin(), w.steps.rend());
  for (auto& s : steps) s.forward = !s.forward;
  return Walk::make(w.graph, w.end, std::move(steps));
}

bool walk_equal(const Walk& a, const Walk& b) {
  return a.start == b.start && a.steps == b.steps && a.graph->same_structure(*b.graph);
}

ReducedWalk reduce(const Walk& w) {
  std::vector<EdgeStep> stack;
  stack.reserve(w.steps.size());
  for (const auto& s : w.steps) {
    if (!stack.empty() && stack.back().inverse_of(s))
      stack.pop_back();
    else
      stack.push_back(s);
  }
  return ReducedWalk{Walk::make(w.graph, w.start, std::move(stack))};
}

bool reduced_equal(const ReducedWalk& a, const ReducedWalk& b) { return walk_equal(a.w, b.w); }

SpanningTree spanning_tree(const GraphPtr& g, int root) {
  if (root < 0 || root >= static_cast<int>(g->vertices.size()))
    throw PreconditionError("spanning_tree: root out of range");
  SpanningTree t;
  t.root = root;
  t.parent.assign(g->vertices.size(), -1);
  t.child_step.assign(g->vertices.size(), EdgeStep{});
  t.depth.assign(g->vertices.size(), 0);
  t.in_tree.assign(g->edges.size(), 0);
  std::vector<char> seen(g->vertices.size(), 0);
  seen[static_cast<std::size_t>(root)] = 1;
  std::deque<int> todo{root};
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop_front();
    for (const auto& s : g->out[static_cast<std::size_t>(v)]) {
      int u = g->step_to(s);
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        t.parent[static_cast<std::size_t>(u)] = v;
        t.child_step[static_cast<std::size_t>(u)] = s;
        t.depth[static_cast<std::size_t>(u)] = t.depth[static_cast<std::size_t>(v)] + 1;
        t.in_tree[static_cast<std::size_t>(s.edge)] = 1;
        todo.push_back(u);
      }
    }
  }
  return t;
}

ReducedWalk tree_path(const GraphPtr& g, const SpanningTree& t, int from, int to) {
  // Lift both endpoints to their lowest common ancestor.
  std::vector<EdgeStep> up;    // from -> lca
  std::vector<EdgeStep> down;  // lca -> to, collected upward then reversed
  int a = from, b = to;
  while (t.depth[static_cast<std::size_t>(a)] > t.depth[static_cast<std::size_t>(b)]) {
    up.push_back(t.child_step[static_cast<std::size_t>(a)].inverted());
    a = t.parent[static_cast<std::size_t>(a)];
  }
  while (t.depth[static_cast<std::size_t>(b)] > t.depth[static_cast<std::size_t>(a)]) {
    down.push_back(t.child_step[static_cast<std::size_t>(b)]);
    b = t.parent[static_cast<std::size_t>(b)];
  }
  while (a != b) {
    up.push_back(t.child_step[static_cast<std::size_t>(a)].inverted());
    a = t.parent[static_cast<std::size_t>(a)];
    down.push_back(t.child_step[static_cast<std::size_t>(b)]);
    b = t.parent[static_cast<std::size_t>(b)];
  }
  std::vector<EdgeStep> steps = std::move(up);
  steps.insert(steps.end(), down.rbegin(), down.rend());
  return reduce(Walk::make(g, from, std::move(steps)));
}

std::vector<int> chord_edges(const GraphPtr& g, const SpanningTree& t) {
  std::vector<int> chords;
  for (const auto& [name, idx] : g->edge_index)
    if (!t.in_tree[static_cast<std::size_t>(idx)]) chords.push_back(idx);
  return chords;  // edge_index is name-sorted
}

std::vector<ReducedWalk> chord_generators(const GraphPtr& g, const SpanningTree& t, int x) {
  std::vector<ReducedWalk> gens;
  for (int e : chord_edges(g, t)) {
    const Graph::Edge& ed = g->edges[static_cast<std::size_t>(e)];
    Walk to_tail = tree_path(g, t, x, ed.tail).w;
    Walk back = tree_path(g, t, ed.head, x).w;
    Walk mid = Walk::make(g, ed.tail, {EdgeStep{e, true}});
    gens.push_back(reduce(compose(back, compose(mid, to_tail))));
  }
  return gens;
}

std::vector<int> loop_decompose(const ReducedWalk& loop, const GraphPtr& g,
                                const std::vector<int>& chords, int x) {
  if (loop.start() != x || loop.end() != x)
    throw PreconditionError("loop_decompose: loop not based at " +
                            g->vertices[static_cast<std::size_t>(x)]);
  std::vector<int> pos(g->edges.size(), -1);
  for (std::size_t i = 0; i < chords.size(); ++i) pos[static_cast<std::size_t>(chords[i])] = static_cast<int>(i);
  std::vector<int> word;
  for (const auto& s : loop.w.steps) {
    int p = pos[static_cast<std::size_t>(s.edge)];
    if (p >= 0) word.push_back(s.forward ? p + 1 : -(p + 1));
  }
  return word;
}

Walk expand_word(const std::vector<int>& word, const std::vector<ReducedWalk>& generators,
                 const GraphPtr& g, int x) {
  Walk acc = Walk::empty_at(g, x);
  for (int letter : word) {
    const Walk& gw = generators[static_cast<std::size_t>(std::abs(letter) - 1)].w;
    acc = compose(letter > 0 ? gw : invert(gw), acc);
  }
  return acc;
}

Walk GraphIso::apply(const Walk& w) const {
  std::vector<EdgeStep> steps;
  steps.reserve(w.steps.size());
  for (const auto& s : w.steps) steps.push_back(e(s));
  return Walk::make(dst, v(w.start), std::move(steps));
}

GraphIso GraphIso::inverse() const {
  GraphIso r;
  r.src = dst;
  r.dst = src;
  r.vmap.assign(vmap.size(), 0);
  r.emap.assign(emap.size(), 0);
  for (std::size_t i = 0; i < vmap.size(); ++i) r.vmap[static_cast<std::size_t>(vmap[i])] = static_cast<int>(i);
  for (std::size_t i = 0; i < emap.size(); ++i) r.emap[static_cast<std::size_t>(emap[i])] = static_cast<int>(i);
  return r;
}

GraphIso identity_graph_iso(const GraphPtr& g) {
  GraphIso iso;
  iso.src = iso.dst = g;
  iso.vmap.resize(g->vertices.size());
  std::iota(iso.vmap.begin(), iso.vmap.end(), 0);
  iso.emap.resize(g->edges.size());
  std::iota(iso.emap.begin(), iso.emap.end(), 0);
  return iso;
}

GraphIso compose(const GraphIso& outer, const GraphIso& inner) {
  if (!inner.dst->same_structure(*outer.src))
    throw PreconditionError("compose(GraphIso): middle graphs differ");
  GraphIso r;
  r.src = inner.src;
  r.dst = outer.dst;
  r.vmap.reserve(inner.vmap.size());
  for (int v : inner.vmap) r.vmap.push_back(outer.vmap[static_cast<std::size_t>(v)]);
  r.emap.reserve(inner.emap.size());
  for (int e : inner.emap) r.emap.push_back(outer.emap[static_cast<std::size_t>(e)]);
  return r;
}

bool graph_iso_equal(const GraphIso& a, const GraphIso& b) {
  return a.vmap == b.vmap && a.emap == b.emap && a.src->same_structure(*b.src) &&
         a.dst->same_structure(*b.dst);
}

bool is_graph_iso(const GraphIso& iso) {
  const Graph& s = *iso.src;
  const Graph& d = *iso.dst;
  if (s.vertices.size() != d.vertices.size() || s.edges.size() != d.edges.size()) return false;
  if (iso.vmap.size() != s.vertices.size() || iso.emap.size() != s.edges.size()) return false;
  std::set<int> vim(iso.vmap.begin(), iso.vmap.end());
  std::set<int> eim(iso.emap.begin(), iso.emap.end());
  if (vim.size() != iso.vmap.size() || eim.size() != iso.emap.size()) return false;
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    const Graph::Edge& e = s.edges[i];
    const Graph::Edge& f = d.edges[static_cast<std::size_t>(iso.emap[i])];
    if (f.tail != iso.vmap[static_cast<std::size_t>(e.tail)] ||
        f.head != iso.vmap[static_cast<std::size_t>(e.head)])
      return false;
  }
  return true;
}

namespace {

struct VertexSig {
  int out_deg, in_deg, loops;
  bool operator==(const VertexSig& o) const {
    return out_deg == o.out_deg && in_deg == o.in_deg && loops == o.loops;
  }
};

std::vector<VertexSig> signatures(const Graph& g) {
  std::vector<VertexSig> sig(g.vertices.size(), {0, 0, 0});
  for (const auto& e : g.edges) {
    if (e.tail == e.head) {
      ++sig[static_cast<std::size_t>(e.tail)].loops;
    } else {
      ++sig[static_cast<std::size_t>(e.tail)].out_deg;
      ++sig[static_cast<std::size_t>(e.head)].in_deg;
    }
  }
  return sig;
}

}  // namespace

std::vector<GraphIso> graph_isomorphisms(const GraphPtr& src, const GraphPtr& dst,
                                         std::size_t max_vertices, std::size_t cap) {
  std::vector<GraphIso> found;
  if (src->vertices.size() != dst->vertices.size() || src->edges.size() != dst->edges.size())
    return found;
  if (src->vertices.size() > max_vertices)
    throw BoundsError("graph_isomorphisms: vertex count exceeds cap " + std::to_string(max_vertices));

  auto ssig = signatures(*src);
  auto dsig = signatures(*dst);
  std::size_t n = src->vertices.size();
  std::vector<int> vmap(n, -1);
  std::vector<char> used(n, 0);

  // Parallel edges between a mapped vertex pair may be matched in any order;
  // enumerate every pairing.
  auto emit_edge_maps = [&]() {
    std::map<std::pair<int, int>, std::vector<int>> sclass, dclass;
    for (std::size_t i = 0; i < src->edges.size(); ++i)
      sclass[{src->edges[i].tail, src->edges[i].head}].push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < dst->edges.size(); ++i)
      dclass[{dst->edges[i].tail, dst->edges[i].head}].push_back(static_cast<int>(i));
    std::vector<std::pair<std::vector<int>, std::vector<int>>> classes;
    for (auto& [key, sedges] : sclass) {
      std::pair<int, int> dkey{vmap[static_cast<std::size_t>(key.first)],
                               vmap[static_cast<std::size_t>(key.second)]};
      auto it = dclass.find(dkey);
      if (it == dclass.end() || it->second.size() != sedges.size()) return;
      classes.emplace_back(sedges, it->second);
    }
    // Cartesian product of per-class permutations, lexicographic on the
    // destination side.
    std::vector<std::vector<int>> perms(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
      perms[c] = classes[c].second;
      std::sort(perms[c].begin(), perms[c].end(), [&](int a, int b) {
        return dst->edges[static_cast<std::size_t>(a)].name < dst->edges[static_cast<std::size_t>(b)].name;
      });
    }
    auto rec = [&](auto&& self, std::size_t c, std::vector<int>& emap) -> void {
      if (found.size() >= cap) return;
      if (c == classes.size()) {
        GraphIso iso;
        iso.src = src;
        iso.dst = dst;
        iso.vmap = vmap;
        iso.emap = emap;
        found.push_back(std::move(iso));
        return;
      }
      std::vector<int> p = perms[c];
      std::sort(p.begin(), p.end());
      do {
        for (std::size_t i = 0; i < p.size(); ++i)
          emap[static_cast<std::size_t>(classes[c].first[i])] = p[i];
        self(self, c + 1, emap);
        if (found.size() >= cap) return;
      } while (std::next_permutation(p.begin(), p.end()));
    };
    std::vector<int> emap(src->edges.size(), -1);
    rec(rec, 0, emap);
  };

  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (found.size() >= cap) return;
    if (v == n) {
      emit_edge_maps();
      return;
    }
    for (std::size_t u = 0; u < n; ++u) {
      if (used[u] || !(ssig[v] == dsig[u])) continue;
      // Partial consistency: edge-class sizes between already-mapped pairs.
      vmap[v] = static_cast<int>(u);
      used[u] = 1;
      bool ok = true;
      for (std::size_t w = 0; w <= v && ok; ++w) {
        if (vmap[w] < 0) continue;
        int cnt_sw_v = 0, cnt_v_sw = 0, cnt_dw_u = 0, cnt_u_dw = 0;
        for (const auto& e : src->edges) {
          if (e.tail == static_cast<int>(w) && e.head == static_cast<int>(v)) ++cnt_sw_v;
          if (e.tail == static_cast<int>(v) && e.head == static_cast<int>(w)) ++cnt_v_sw;
        }
        for (const auto& e : dst->edges) {
          if (e.tail == vmap[w] && e.head == static_cast<int>(u)) ++cnt_dw_u;
          if (e.tail == static_cast<int>(u) && e.head == vmap[w]) ++cnt_u_dw;
        }
        ok = cnt_sw_v == cnt_dw_u && cnt_v_sw == cnt_u_dw;
      }
      if (ok) self(self, v + 1);
      used[u] = 0;
      vmap[v] = -1;
    }
  };
  rec(rec, 0);
  return found;
}

GraphPtr theta_graph() {
  return Graph::make({"x", "y"}, {{"a", "x", "y"}, {"b", "x", "y"}, {"c", "x", "y"}});
}

GraphPtr figure_eight_graph() {
  return Graph::make({"x"}, {{"a", "x", "x"}, {"b", "x", "x"}});
}

GraphPtr path_graph(int n) {
  if (n < 1) throw ValidationError("path_graph: need n >= 1");
  std::vector<std::string> vs;
  std::vector<std::tuple<std::string, std::string, std::string>> es;
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i)
    es.emplace_back("e" + std::to_string(i), vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(i + 1)]);
  return Graph::make(vs, es);
}

GraphPtr cycle_graph(int n) {
  if (n < 1) throw ValidationError("cycle_graph: need n >= 1");
  std::vector<std::string> vs;
  std::vector<std::tuple<std::string, std::string, std::string>> es;
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    es.emplace_back("e" + std::to_string(i), vs[static_cast<std::size_t>(i)],
                    vs[static_cast<std::size_t>((i + 1) % n)]);
  return Graph::make(vs, es);
}

}  // namespace hol
