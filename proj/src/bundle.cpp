#include "hol/bundle.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "hol/rng.hpp"

namespace hol {

GaugeField GaugeField::make(GraphPtr g, const GroupDescriptor& group,
                            std::vector<GroupElement> links) {
  if (links.size() != g->edges.size())
    throw ValidationError("gauge field: need one link per edge");
  for (const auto& u : links)
    if (u.desc != group) throw ValidationError("gauge field: link not in structure group");
  GaugeField f;
  f.graph = std::move(g);
  f.group = group;
  f.links = std::move(links);
  return f;
}

GaugeField GaugeField::flat(GraphPtr g, const GroupDescriptor& group) {
  std::vector<GroupElement> links(g->edges.size(), identity(group));
  return make(std::move(g), group, std::move(links));
}

GroupElement GaugeField::step_value(const EdgeStep& s) const {
  const GroupElement& u = links[static_cast<std::size_t>(s.edge)];
  return s.forward ? u : inverse(u);
}

BundlePoint right_act(const BundlePoint& p, const GroupElement& g) {
  return {p.vertex, multiply(p.fiber, g)};
}

bool point_equal(const BundlePoint& a, const BundlePoint& b) {
  return a.vertex == b.vertex && equal(a.fiber, b.fiber);
}

GaugeTransformation GaugeTransformation::identity_for(const GaugeField& f) {
  return {f.group, std::vector<GroupElement>(f.graph->vertices.size(), identity(f.group))};
}

BundlePoint transport(const GaugeField& field, const Walk& w, const BundlePoint& p) {
  if (w.start != p.vertex)
    throw PreconditionError("transport: walk does not start at the point's vertex");
  GroupElement fiber = p.fiber;
  for (const auto& s : w.steps) fiber = multiply(field.step_value(s), fiber);
  return {w.end, fiber};
}

GroupElement holonomy(const GaugeField& field, const Walk& loop, const BundlePoint& u) {
  if (!loop.closed() || loop.start != u.vertex)
    throw PreconditionError("holonomy: loop is not closed at the base point");
  BundlePoint t = transport(field, loop, u);
  return multiply(inverse(u.fiber), t.fiber);
}

GaugeField apply_gauge(const GaugeField& field, const GaugeTransformation& t) {
  if (t.group != field.group) throw PreconditionError("apply_gauge: group mismatch");
  if (t.at.size() != field.graph->vertices.size())
    throw PreconditionError("apply_gauge: transformation not total on vertices");
  std::vector<GroupElement> links;
  links.reserve(field.links.size());
  for (std::size_t i = 0; i < field.links.size(); ++i) {
    const Graph::Edge& e = field.graph->edges[i];
    links.push_back(multiply(multiply(t.at[static_cast<std::size_t>(e.head)], field.links[i]),
                             inverse(t.at[static_cast<std::size_t>(e.tail)])));
  }
  return GaugeField::make(field.graph, field.group, std::move(links));
}

BundlePoint morphism_apply(const BundleMorphism& m, const BundlePoint& p) {
  return {m.psi.v(p.vertex),
          multiply(m.frame[static_cast<std::size_t>(p.vertex)], m.phi.apply(p.fiber))};
}

BundleMorphism morphism_inverse(const BundleMorphism& m) {
  BundleMorphism r;
  r.psi = m.psi.inverse();
  r.phi = inverse_hom(m.phi);
  r.frame.resize(m.frame.size(), identity(m.phi.source));
  for (std::size_t v = 0; v < m.frame.size(); ++v) {
    // F^-1(w, h) = (psi^-1 w, phi^-1(frame(psi^-1 w)^-1 h))
    int w = m.psi.v(static_cast<int>(v));
    r.frame[static_cast<std::size_t>(w)] = r.phi.apply(inverse(m.frame[v]));
  }
  return r;
}

BundleMorphism compose(const BundleMorphism& outer, const BundleMorphism& inner) {
  BundleMorphism r;
  r.psi = compose(outer.psi, inner.psi);
  r.phi = compose_hom(outer.phi, inner.phi);
  r.frame.reserve(inner.frame.size());
  for (std::size_t v = 0; v < inner.frame.size(); ++v) {
    int mid = inner.psi.v(static_cast<int>(v));
    r.frame.push_back(multiply(outer.frame[static_cast<std::size_t>(mid)],
                               outer.phi.apply(inner.frame[v])));
  }
  return r;
}

bool morphism_equal(const BundleMorphism& a, const BundleMorphism& b) {
  if (!graph_iso_equal(a.psi, b.psi) || !hom_equal(a.phi, b.phi)) return false;
  if (a.frame.size() != b.frame.size()) return false;
  for (std::size_t i = 0; i < a.frame.size(); ++i)
    if (!equal(a.frame[i], b.frame[i])) return false;
  return true;
}

double morphism_connection_residual(const BundleMorphism& m, const GaugeField& src,
                                    const GaugeField& dst) {
  double worst = 0;
  for (std::size_t i = 0; i < src.graph->edges.size(); ++i) {
    const Graph::Edge& e = src.graph->edges[i];
    GroupElement expect = multiply(
        multiply(m.frame[static_cast<std::size_t>(e.head)], m.phi.apply(src.links[i])),
        inverse(m.frame[static_cast<std::size_t>(e.tail)]));
    const GroupElement& got =
        dst.links[static_cast<std::size_t>(m.psi.emap[i])];
    worst = std::max(worst, distance(expect, got));
  }
  return worst;
}

bool morphism_preserves_connection(const BundleMorphism& m, const GaugeField& src,
                                   const GaugeField& dst) {
  for (std::size_t i = 0; i < src.graph->edges.size(); ++i) {
    const Graph::Edge& e = src.graph->edges[i];
    GroupElement expect = multiply(
        multiply(m.frame[static_cast<std::size_t>(e.head)], m.phi.apply(src.links[i])),
        inverse(m.frame[static_cast<std::size_t>(e.tail)]));
    if (!equal(expect, dst.links[static_cast<std::size_t>(m.psi.emap[i])])) return false;
  }
  return true;
}

HolonomySubBundle holonomy_subbundle(const GaugeField& field, const BundlePoint& u) {
  HolonomySubBundle sb;
  sb.field = field;
  sb.base = u;
  const GraphPtr& g = field.graph;
  SpanningTree tree = spanning_tree(g, u.vertex);

  std::vector<GroupElement> hol_gens;
  for (const auto& gen : chord_generators(g, tree, u.vertex))
    hol_gens.push_back(holonomy(field, gen.w, u));
  sb.holonomy_group = subgroup_generated(field.group, hol_gens);

  sb.representative.reserve(g->vertices.size());
  for (std::size_t v = 0; v < g->vertices.size(); ++v)
    sb.representative.push_back(
        transport(field, tree_path(g, tree, u.vertex, static_cast<int>(v)).w, u));

  if (field.group.finite()) {
    // Fiber over v = representative(v) . Phi.
    sb.fibers.resize(g->vertices.size());
    for (std::size_t v = 0; v < g->vertices.size(); ++v) {
      std::set<std::uint64_t> seen;
      for (const auto& h : sb.holonomy_group.elements) {
        GroupElement f = multiply(sb.representative[v].fiber, h);
        if (seen.insert(element_key(f)).second) sb.fibers[v].push_back(f);
      }
      std::sort(sb.fibers[v].begin(), sb.fibers[v].end(),
                [](const GroupElement& a, const GroupElement& b) {
                  return element_key(a) < element_key(b);
                });
    }
  }
  return sb;
}

bool subbundle_contains(const HolonomySubBundle& sb, const BundlePoint& p, int word_depth) {
  if (p.vertex < 0 || p.vertex >= static_cast<int>(sb.representative.size())) return false;
  const BundlePoint& rep = sb.representative[static_cast<std::size_t>(p.vertex)];
  GroupElement h = multiply(inverse(rep.fiber), p.fiber);
  if (sb.holonomy_group.enumerated) return sb.holonomy_group.contains(h);
  return word_for_element(sb.holonomy_group.generators, h, word_depth).has_value();
}

Report check_lemma1_with(const GaugeField& field, std::uint64_t trials, std::uint64_t seed,
                         const TransportFn& fn) {
  Report rep;
  rep.suite = "lemma1";
  rep.seed = seed;
  const GraphPtr& g = field.graph;
  SpanningTree tree = spanning_tree(g, 0);

  auto random_walk_from = [&](Rng& rng, int from, int len) {
    Walk w = Walk::empty_at(g, from);
    for (int i = 0; i < len; ++i) {
      const auto& outs = g->out[static_cast<std::size_t>(w.end)];
      if (outs.empty()) break;
      w = compose(Walk::make(g, w.end, {outs[rng.below(outs.size())]}), w);
    }
    return w;
  };

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, t);
    int x = static_cast<int>(rng.below(g->vertices.size()));
    BundlePoint u{x, random_element(field.group, rng)};
    GroupElement h = random_element(field.group, rng);

    // alpha, alpha' share both endpoints: force via tree paths.
    Walk a1 = random_walk_from(rng, x, rng.range(0, 6));
    Walk alpha_prime = a1;
    Walk a2 = random_walk_from(rng, x, rng.range(0, 6));
    Walk alpha = compose(tree_path(g, tree, a2.end, a1.end).w, a2);

    double tol = field.group.finite() ? 0.0 : field.group.tolerance;
    auto check = [&](bool ok, double resid, const char* what) {
      rep.checks++;
      rep.residual(resid);
      if (!ok) rep.fail(t, std::string(what) + " seed=" + std::to_string(seed) + " trial=" + std::to_string(t));
      (void)tol;
    };

    // (a) transport along alpha^-1 . alpha' equals the two-stage transport
    BundlePoint two_stage = fn(field, invert(alpha), fn(field, alpha_prime, u));
    BundlePoint one_shot = fn(field, compose(invert(alpha), alpha_prime), u);
    check(point_equal(two_stage, one_shot), distance(two_stage.fiber, one_shot.fiber),
          "lemma1(a) composite transport mismatch");

    // (b) the two-stage transport returns to u iff the endpoint transports agree
    BundlePoint ta = fn(field, alpha, u);
    BundlePoint tap = fn(field, alpha_prime, u);
    bool lhs = point_equal(two_stage, u);
    bool rhs = point_equal(ta, tap);
    check(lhs == rhs, 0.0, "lemma1(b) return-iff-agree violated");

    // (c) trivial holonomy iff fixed point
    Walk gamma = random_walk_from(rng, x, rng.range(0, 6));
    Walk loop = compose(tree_path(g, tree, gamma.end, x).w, gamma);
    BundlePoint tl = fn(field, loop, u);
    GroupElement hol = multiply(inverse(u.fiber), tl.fiber);
    bool triv = equal(hol, identity(field.group));
    bool fixed = point_equal(tl, u);
    check(triv == fixed, 0.0, "lemma1(c) holonomy-identity iff fixpoint violated");

    // (d) right equivariance
    BundlePoint lhs_d = fn(field, alpha, right_act(u, h));
    BundlePoint rhs_d = right_act(fn(field, alpha, u), h);
    check(point_equal(lhs_d, rhs_d), distance(lhs_d.fiber, rhs_d.fiber),
          "lemma1(d) right equivariance violated");

    rep.trials++;
  }
  return rep;
}

Report check_lemma1(const GaugeField& field, std::uint64_t trials, std::uint64_t seed) {
  return check_lemma1_with(field, trials, seed,
                           [](const GaugeField& f, const Walk& w, const BundlePoint& p) {
                             return transport(f, w, p);
                           });
}

}  // namespace hol
