#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hol/bundle.hpp"
#include "hol/rng.hpp"
#include "hol/suites.hpp"

using namespace hol;

namespace {

// Direct product oracle: collect step values, multiply in the opposite
// association order, conjugate by the base fiber explicitly.
GroupElement holonomy_oracle(const GaugeField& f, const Walk& loop, const BundlePoint& u) {
  std::vector<GroupElement> values;
  for (const auto& s : loop.steps) values.push_back(f.step_value(s));
  GroupElement w = identity(f.group);
  for (auto it = values.rbegin(); it != values.rend(); ++it) w = multiply(w, *it);
  return multiply(multiply(inverse(u.fiber), w), u.fiber);
}

GroupElement perm(const GroupDescriptor& d, std::vector<int> p) {
  return GroupElement{d, std::move(p)};
}

Walk step_walk(const GraphPtr& g, int vertex, const std::vector<std::pair<std::string, bool>>& named) {
  std::vector<EdgeStep> steps;
  for (const auto& [name, fwd] : named) steps.push_back({g->edge(name), fwd});
  return Walk::make(g, vertex, std::move(steps));
}

}  // namespace

TEST_CASE("transport: flat field moves vertices only") {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    GraphPtr g = random_connected_graph(rng, 8);
    GaugeField flat = GaugeField::flat(g, GroupDescriptor::symmetric(3));
    int x = static_cast<int>(rng.below(g->vertices.size()));
    GroupElement f = random_element(flat.group, rng);
    Walk w = random_walk_from(rng, g, x, rng.range(0, 10));
    BundlePoint p = transport(flat, w, {x, f});
    CHECK(p.vertex == w.end);
    CHECK(equal(p.fiber, f));
  }
}

TEST_CASE("transport: self-loop powers (frozen)") {
  GraphPtr g = Graph::make({"x"}, {{"a", "x", "x"}});
  GroupDescriptor s3 = GroupDescriptor::symmetric(3);
  GroupElement sigma = perm(s3, {1, 2, 0});
  GaugeField field = GaugeField::make(g, s3, {sigma});
  BundlePoint u{0, identity(s3)};
  BundlePoint two = transport(field, step_walk(g, 0, {{"a", true}, {"a", true}}), u);
  // sigma^2 of the 3-cycle 0->1->2->0 sends 0->2, 1->0, 2->1.
  CHECK(equal(two.fiber, perm(s3, {2, 0, 1})));
  BundlePoint back =
      transport(field, step_walk(g, 0, {{"a", false}, {"a", false}}), two);
  CHECK(point_equal(back, u));
}

TEST_CASE("transport: inverse walk returns to the start") {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    GraphPtr g = random_connected_graph(rng, 8);
    GaugeField field = random_field(rng, g, GroupDescriptor::dihedral(5));
    int x = static_cast<int>(rng.below(g->vertices.size()));
    BundlePoint p{x, random_element(field.group, rng)};
    Walk w = random_walk_from(rng, g, x, rng.range(0, 12));
    CHECK(point_equal(transport(field, invert(w), transport(field, w, p)), p));
  }
}

TEST_CASE("transport: functoriality and right equivariance") {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    GraphPtr g = random_connected_graph(rng, 8);
    GaugeField field = random_field(rng, g, GroupDescriptor::symmetric(4));
    int x = static_cast<int>(rng.below(g->vertices.size()));
    BundlePoint p{x, random_element(field.group, rng)};
    Walk w1 = random_walk_from(rng, g, x, rng.range(0, 8));
    Walk w2 = random_walk_from(rng, g, w1.end, rng.range(0, 8));
    CHECK(point_equal(transport(field, compose(w2, w1), p),
                      transport(field, w2, transport(field, w1, p))));
    GroupElement h = random_element(field.group, rng);
    CHECK(point_equal(transport(field, w1, right_act(p, h)),
                      right_act(transport(field, w1, p), h)));
  }
}

TEST_CASE("holonomy: frozen base cases and base-change conjugation") {
  GraphPtr g = Graph::make({"x"}, {{"a", "x", "x"}});
  GroupDescriptor s3 = GroupDescriptor::symmetric(3);
  GroupElement sigma = perm(s3, {1, 2, 0});
  GaugeField field = GaugeField::make(g, s3, {sigma});

  CHECK(equal(holonomy(field, Walk::empty_at(g, 0), {0, identity(s3)}), identity(s3)));
  CHECK(equal(holonomy(field, step_walk(g, 0, {{"a", true}}), {0, identity(s3)}), sigma));

  GroupElement tau = perm(s3, {1, 0, 2});
  GroupElement at_tau = holonomy(field, step_walk(g, 0, {{"a", true}}), {0, tau});
  CHECK(equal(at_tau, multiply(multiply(inverse(tau), sigma), tau)));

  // Open walks are rejected.
  GraphPtr theta = theta_graph();
  GaugeField tfield = GaugeField::flat(theta, s3);
  CHECK_THROWS_AS(
      holonomy(tfield, step_walk(theta, 0, {{"a", true}}), BundlePoint{0, identity(s3)}),
      PreconditionError);
}

TEST_CASE("holonomy agrees with the direct product oracle") {
  Rng rng(4);
  const std::vector<GroupDescriptor> kinds = {GroupDescriptor::symmetric(4),
                                              GroupDescriptor::quaternion8(),
                                              GroupDescriptor::su2()};
  for (int t = 0; t < 500; ++t) {
    GraphPtr g = random_connected_graph(rng, 8);
    const GroupDescriptor& d = kinds[static_cast<std::size_t>(t) % kinds.size()];
    GaugeField field = random_field(rng, g, d);
    SpanningTree tree = spanning_tree(g, 0);
    int x = static_cast<int>(rng.below(g->vertices.size()));
    BundlePoint u{x, random_element(d, rng)};
    Walk loop = random_walk_between(rng, g, tree, x, x, rng.range(0, 10));
    CHECK(distance(holonomy(field, loop, u), holonomy_oracle(field, loop, u)) <=
          (d.finite() ? 0.0 : 1e-12));
  }
}

TEST_CASE("holonomy: thin invariance and multiplicativity") {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    GraphPtr g = random_connected_graph(rng, 8);
    GaugeField field = random_field(rng, g, GroupDescriptor::dihedral(4));
    SpanningTree tree = spanning_tree(g, 0);
    int x = static_cast<int>(rng.below(g->vertices.size()));
    BundlePoint u{x, random_element(field.group, rng)};
    Walk loop1 = random_walk_between(rng, g, tree, x, x, rng.range(0, 8));
    Walk loop2 = random_walk_between(rng, g, tree, x, x, rng.range(0, 8));
    CHECK(equal(holonomy(field, loop1, u), holonomy(field, reduce(loop1).w, u)));
    CHECK(equal(holonomy(field, compose(loop1, loop2), u),
                multiply(holonomy(field, loop1, u), holonomy(field, loop2, u))));
  }
}

TEST_CASE("lemma 2 on seeded random data via the product oracle") {
  Rng rng(6);
  for (int t = 0; t < 500; ++t) {
    GraphPtr g = random_connected_graph(rng, 10);
    GaugeField field = random_field(rng, g, GroupDescriptor::symmetric(4));
    SpanningTree tree = spanning_tree(g, 0);
    int x = static_cast<int>(rng.below(g->vertices.size()));
    int xp = static_cast<int>(rng.below(g->vertices.size()));
    Walk alpha = random_walk_between(rng, g, tree, x, xp, rng.range(0, 6));
    BundlePoint u{xp, random_element(field.group, rng)};
    Walk gamma = random_walk_between(rng, g, tree, xp, xp, rng.range(0, 6));
    BundlePoint v = transport(field, invert(alpha), u);
    Walk conj = compose(invert(alpha), compose(gamma, alpha));
    CHECK(equal(holonomy_oracle(field, gamma, u), holonomy_oracle(field, conj, v)));
    CHECK(equal(holonomy(field, gamma, u), holonomy(field, conj, v)));
  }
}

TEST_CASE("apply_gauge: frozen cases") {
  GraphPtr g = theta_graph();
  GroupDescriptor c6 = GroupDescriptor::cyclic(6);
  Rng rng(7);
  GaugeField field = random_field(rng, g, c6);

  GaugeField same = apply_gauge(field, GaugeTransformation::identity_for(field));
  for (std::size_t i = 0; i < field.links.size(); ++i) CHECK(equal(same.links[i], field.links[i]));

  // Constant transformation on an abelian group cancels.
  GroupElement c = random_element(c6, rng);
  GaugeTransformation constant{c6, {c, c}};
  GaugeField gauged = apply_gauge(field, constant);
  for (std::size_t i = 0; i < field.links.size(); ++i) CHECK(equal(gauged.links[i], field.links[i]));
}

TEST_CASE("apply_gauge conjugates Wilson loops by t(x)") {
  Rng rng(8);
  for (int t = 0; t < 500; ++t) {
    GraphPtr g = random_connected_graph(rng, 8);
    GaugeField field = random_field(rng, g, GroupDescriptor::quaternion8());
    SpanningTree tree = spanning_tree(g, 0);
    GaugeTransformation tr{field.group, {}};
    for (std::size_t v = 0; v < g->vertices.size(); ++v)
      tr.at.push_back(random_element(field.group, rng));
    GaugeField gauged = apply_gauge(field, tr);
    int x = static_cast<int>(rng.below(g->vertices.size()));
    Walk loop = random_walk_between(rng, g, tree, x, x, rng.range(0, 8));
    BundlePoint u{x, identity(field.group)};
    GroupElement before = holonomy(field, loop, u);
    GroupElement after = holonomy(gauged, loop, u);
    const GroupElement& tx = tr.at[static_cast<std::size_t>(x)];
    CHECK(equal(after, multiply(multiply(tx, before), inverse(tx))));
  }
}

TEST_CASE("morphism_preserves_connection: identity, gauge data, perturbation") {
  Rng rng(9);
  GraphPtr g = theta_graph();
  GroupDescriptor s3 = GroupDescriptor::symmetric(3);
  GaugeField field = random_field(rng, g, s3);

  BundleMorphism ident{identity_graph_iso(g), identity_hom(s3),
                       std::vector<GroupElement>(g->vertices.size(), identity(s3))};
  CHECK(morphism_preserves_connection(ident, field, field));

  GaugeTransformation tr{s3, {random_element(s3, rng), random_element(s3, rng)}};
  GaugeField gauged = apply_gauge(field, tr);
  BundleMorphism vert{identity_graph_iso(g), identity_hom(s3), tr.at};
  CHECK(morphism_preserves_connection(vert, field, gauged));
  CHECK(morphism_connection_residual(vert, field, gauged) == 0.0);

  // Perturb one link of the target.
  GaugeField broken = gauged;
  broken.links[0] = multiply(broken.links[0], perm(s3, {1, 0, 2}));
  CHECK_FALSE(morphism_preserves_connection(vert, field, broken));
  CHECK(morphism_connection_residual(vert, field, broken) > 0.0);
}

TEST_CASE("morphism inverse and composition act correctly on points") {
  Rng rng(10);
  for (int t = 0; t < 100; ++t) {
    GraphPtr g = random_connected_graph(rng, 6);
    GroupDescriptor d = GroupDescriptor::dihedral(4);
    GraphIso relabel = random_relabeling(rng, g);
    BundleMorphism m{relabel, conjugation_hom(random_element(d, rng)), {}};
    for (std::size_t v = 0; v < g->vertices.size(); ++v) m.frame.push_back(random_element(d, rng));
    BundleMorphism minv = morphism_inverse(m);
    BundlePoint p{static_cast<int>(rng.below(g->vertices.size())), random_element(d, rng)};
    CHECK(point_equal(morphism_apply(minv, morphism_apply(m, p)), p));
    BundleMorphism round = compose(minv, m);
    CHECK(point_equal(morphism_apply(round, p), p));
  }
}

TEST_CASE("holonomy_subbundle: flat field collapses to points, trivial group") {
  GraphPtr g = theta_graph();
  GaugeField flat = GaugeField::flat(g, GroupDescriptor::symmetric(3));
  HolonomySubBundle sb = holonomy_subbundle(flat, {0, identity(flat.group)});
  CHECK(sb.holonomy_group.size() == 1);
  for (const auto& fiber : sb.fibers) CHECK(fiber.size() == 1);
}

TEST_CASE("holonomy_subbundle: cyclic(6) self-loop of order 3 (frozen)") {
  GraphPtr g = Graph::make({"x"}, {{"a", "x", "x"}});
  GroupDescriptor c6 = GroupDescriptor::cyclic(6);
  GaugeField field = GaugeField::make(g, c6, {{c6, 2}});
  HolonomySubBundle sb = holonomy_subbundle(field, {0, identity(c6)});
  REQUIRE(sb.holonomy_group.size() == 3);
  CHECK(sb.holonomy_group.contains({c6, 0}));
  CHECK(sb.holonomy_group.contains({c6, 2}));
  CHECK(sb.holonomy_group.contains({c6, 4}));
  REQUIRE(sb.fibers.size() == 1);
  CHECK(sb.fibers[0].size() == 3);
}

TEST_CASE("holonomy_subbundle: reduction property, exhaustively small") {
  Rng rng(11);
  const std::vector<GroupDescriptor> kinds = {GroupDescriptor::cyclic(6),
                                              GroupDescriptor::symmetric(4),
                                              GroupDescriptor::quaternion8()};
  for (int t = 0; t < 60; ++t) {
    GraphPtr g = random_connected_graph(rng, 6);
    const GroupDescriptor& d = kinds[static_cast<std::size_t>(t) % kinds.size()];
    GaugeField field = random_field(rng, g, d);
    BundlePoint u{static_cast<int>(rng.below(g->vertices.size())), random_element(d, rng)};
    HolonomySubBundle sb = holonomy_subbundle(field, u);

    // Fibers are right Phi-cosets of the representatives.
    for (std::size_t v = 0; v < g->vertices.size(); ++v) {
      CHECK(sb.fibers[v].size() == sb.holonomy_group.size());
      for (const auto& h : sb.holonomy_group.elements) {
        GroupElement member = multiply(sb.representative[v].fiber, h);
        bool found = false;
        for (const auto& f : sb.fibers[v])
          if (equal(f, member)) found = true;
        CHECK(found);
      }
    }
    // Closed under transport along every edge, both ways.
    for (std::size_t e = 0; e < g->edges.size(); ++e) {
      const Graph::Edge& ed = g->edges[e];
      for (const auto& f : sb.fibers[static_cast<std::size_t>(ed.tail)]) {
        GroupElement out = multiply(field.links[e], f);
        bool found = false;
        for (const auto& f2 : sb.fibers[static_cast<std::size_t>(ed.head)])
          if (equal(f2, out)) found = true;
        CHECK(found);
      }
    }
    // Every bundle point factors as subbundle point times a group element.
    for (std::size_t v = 0; v < g->vertices.size(); ++v)
      for (const auto& any : enumerate_group(d)) {
        GroupElement a = multiply(inverse(sb.representative[v].fiber), any);
        CHECK(equal(multiply(sb.representative[v].fiber, a), any));
      }
  }
}

TEST_CASE("subbundle_contains: exact for finite kinds, word search for SU2") {
  GraphPtr g = Graph::make({"x"}, {{"a", "x", "x"}});
  GroupDescriptor c6 = GroupDescriptor::cyclic(6);
  GaugeField field = GaugeField::make(g, c6, {{c6, 2}});
  HolonomySubBundle sb = holonomy_subbundle(field, {0, identity(c6)});
  CHECK(subbundle_contains(sb, {0, {c6, 4}}));
  CHECK_FALSE(subbundle_contains(sb, {0, {c6, 1}}));

  GroupDescriptor su2 = GroupDescriptor::su2();
  Rng rng(99);
  GraphPtr theta = theta_graph();
  GaugeField mfield = random_field(rng, theta, su2);
  BundlePoint u{0, identity(su2)};
  HolonomySubBundle msb = holonomy_subbundle(mfield, u);
  // Any transported point is a member; a generic fiber point is not
  // reachable by short holonomy words.
  SpanningTree tree = spanning_tree(theta, 0);
  BundlePoint moved = transport(mfield, random_walk_between(rng, theta, tree, 0, 1, 3), u);
  CHECK(subbundle_contains(msb, moved, 4));
  GaugeField flat = GaugeField::flat(theta, su2);
  HolonomySubBundle fsb = holonomy_subbundle(flat, u);
  CHECK(subbundle_contains(fsb, {1, identity(su2)}));
  CHECK_FALSE(subbundle_contains(fsb, {1, random_element(su2, rng)}, 4));
}

TEST_CASE("check_lemma1: flat and random fields pass; fault fixture is flagged") {
  Rng rng(12);
  GraphPtr g = random_connected_graph(rng, 10);
  GaugeField flat = GaugeField::flat(g, GroupDescriptor::symmetric(4));
  CHECK(check_lemma1(flat, 100, 1).pass());

  GaugeField field = random_field(rng, g, GroupDescriptor::symmetric(4));
  Report rep = check_lemma1(field, 1000, 2);
  CHECK(rep.pass());
  CHECK(rep.checks == 4000);

  // Fault injection: a transport that tacks a fixed non-central factor onto
  // the fiber breaks composition and equivariance.
  GroupElement bad = perm(GroupDescriptor::symmetric(4), {1, 0, 2, 3});
  TransportFn corrupt = [bad](const GaugeField& f, const Walk& w, const BundlePoint& p) {
    BundlePoint q = transport(f, w, p);
    return BundlePoint{q.vertex, multiply(q.fiber, bad)};
  };
  Report broken = check_lemma1_with(field, 100, 3, corrupt);
  CHECK_FALSE(broken.pass());
}
