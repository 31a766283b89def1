#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hol/holcat.hpp"
#include "hol/reconstruct.hpp"
#include "hol/rng.hpp"
#include "hol/suites.hpp"

using namespace hol;

namespace {

GroupElement perm(const GroupDescriptor& d, std::vector<int> p) {
  return GroupElement{d, std::move(p)};
}

Walk step_walk(const GraphPtr& g, int vertex, const std::vector<std::pair<std::string, bool>>& named) {
  std::vector<EdgeStep> steps;
  for (const auto& [name, fwd] : named) steps.push_back({g->edge(name), fwd});
  return Walk::make(g, vertex, std::move(steps));
}

// All reduced walks from `from` to `to` of length <= cap.
void enumerate_reduced(const GraphPtr& g, int from, int to, int cap, Walk current,
                       std::vector<Walk>& out) {
  if (current.end == to) out.push_back(current);
  if (static_cast<int>(current.length()) == cap) return;
  for (const auto& s : g->out[static_cast<std::size_t>(current.end)]) {
    if (!current.steps.empty() && current.steps.back().inverse_of(s)) continue;
    std::vector<EdgeStep> steps = current.steps;
    steps.push_back(s);
    enumerate_reduced(g, from, to, cap, Walk::make(g, current.start, std::move(steps)), out);
  }
}

// Definition-level oracle for H_alpha = H_beta: compare on every reduced
// loop at the shared start vertex up to the length bound.
bool alpha_equivalent_oracle(const HolonomyMap& H, const ReducedWalk& alpha,
                             const ReducedWalk& beta, int cap) {
  std::vector<Walk> loops;
  enumerate_reduced(H.graph, alpha.start(), alpha.start(), cap,
                    Walk::empty_at(H.graph, alpha.start()), loops);
  for (const auto& loop : loops) {
    Walk lhs = compose(alpha.w, compose(loop, invert(alpha.w)));
    Walk rhs = compose(beta.w, compose(loop, invert(beta.w)));
    if (!equal(evaluate(H, lhs), evaluate(H, rhs))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("evaluate: frozen base cases") {
  GraphPtr theta = theta_graph();
  GroupDescriptor s3 = GroupDescriptor::symmetric(3);
  Rng rng(1);
  HolonomyMap H = random_holonomy_map(rng, theta, 0, s3);

  CHECK(equal(evaluate(H, Walk::empty_at(theta, 0)), identity(s3)));
  for (std::size_t i = 0; i < H.generators.size(); ++i)
    CHECK(equal(evaluate(H, H.generators[i].w), H.images[i]));
  CHECK_THROWS_AS(evaluate(H, step_walk(theta, 0, {{"b", true}})), PreconditionError);
}

TEST_CASE("evaluate agrees with field holonomy through the induced map") {
  Rng rng(2);
  const std::vector<GroupDescriptor> kinds = {GroupDescriptor::symmetric(4),
                                              GroupDescriptor::quaternion8(),
                                              GroupDescriptor::u1()};
  for (int t = 0; t < 500; ++t) {
    GraphPtr g = random_connected_graph(rng, 8);
    const GroupDescriptor& d = kinds[static_cast<std::size_t>(t) % kinds.size()];
    GaugeField field = random_field(rng, g, d);
    int x = static_cast<int>(rng.below(g->vertices.size()));
    BundlePoint u{x, random_element(d, rng)};
    HolonomyMap H = induced_holonomy_map(field, u);
    SpanningTree tree = spanning_tree(g, x);
    Walk loop = random_walk_between(rng, g, tree, x, x, rng.range(0, 10));
    CHECK(distance(evaluate(H, loop), holonomy(field, loop, u)) <= (d.finite() ? 0.0 : 1e-12));
  }
}

TEST_CASE("induced_holonomy_map: flat and frozen theta products") {
  GraphPtr theta = theta_graph();
  GroupDescriptor s3 = GroupDescriptor::symmetric(3);
  HolonomyMap flat = induced_holonomy_map(GaugeField::flat(theta, s3), {0, identity(s3)});
  for (const auto& im : flat.images) CHECK(equal(im, identity(s3)));

  // Links a -> k (tree edge), b -> g, c -> h; generator images are k^-1 g
  // and k^-1 h at the identity frame.
  GroupElement k = perm(s3, {1, 0, 2});
  GroupElement gval = perm(s3, {1, 2, 0});
  GroupElement hval = perm(s3, {0, 2, 1});
  GaugeField field = GaugeField::make(theta, s3, {k, gval, hval});
  HolonomyMap H = induced_holonomy_map(field, {0, identity(s3)});
  REQUIRE(H.chords.size() == 2);
  CHECK(equal(H.images[0], multiply(inverse(k), gval)));
  CHECK(equal(H.images[1], multiply(inverse(k), hval)));

  // Frozen product: k^-1 g with k = (01), g = the 3-cycle, equals (12).
  CHECK(equal(H.images[0], perm(s3, {0, 2, 1})));

  // Base change conjugates all images.
  GroupElement shift = perm(s3, {2, 0, 1});
  HolonomyMap H2 = induced_holonomy_map(field, {0, shift});
  for (std::size_t i = 0; i < H.images.size(); ++i)
    CHECK(equal(H2.images[i], multiply(multiply(inverse(shift), H.images[i]), shift)));
}

TEST_CASE("alpha_equivalent: trivial and flat cases") {
  GraphPtr theta = theta_graph();
  GroupDescriptor c2 = GroupDescriptor::cyclic(2);
  HolonomyMap flat = HolonomyMap::flat(theta, 0, c2);
  SpanningTree tree = flat.tree;
  ReducedWalk a = tree_path(theta, tree, 1, 0);
  ReducedWalk b = reduce(step_walk(theta, 1, {{"b", false}}));
  CHECK(alpha_equivalent(flat, a, a));
  CHECK(alpha_equivalent(flat, a, b));
  ReducedWalk loop_at_zero = reduce(Walk::empty_at(theta, 0));
  CHECK_THROWS_AS(alpha_equivalent(flat, a, loop_at_zero), PreconditionError);
}

TEST_CASE("alpha_equivalent matches the definition-level oracle") {
  GraphPtr theta = theta_graph();
  GroupDescriptor s3 = GroupDescriptor::symmetric(3);
  Rng rng(3);
  int agree = 0, differ = 0;
  for (int t = 0; t < 60; ++t) {
    HolonomyMap H = random_holonomy_map(rng, theta, 0, s3);
    ReducedWalk a = reduce(random_walk_between(rng, theta, H.tree, 1, 0, rng.range(0, 5)));
    ReducedWalk b = reduce(random_walk_between(rng, theta, H.tree, 1, 0, rng.range(0, 5)));
    bool fast = alpha_equivalent(H, a, b);
    bool slow = alpha_equivalent_oracle(H, a, b, 8);
    CHECK(fast == slow);
    (fast ? agree : differ)++;
  }
  // The sample must exercise both outcomes.
  CHECK(agree > 0);
  CHECK(differ > 0);
}

TEST_CASE("canonical_alpha: deterministic class representative") {
  GraphPtr theta = theta_graph();
  GroupDescriptor c4 = GroupDescriptor::cyclic(4);
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    HolonomyMap H = random_holonomy_map(rng, theta, 0, c4);
    ReducedWalk a = reduce(random_walk_between(rng, theta, H.tree, 1, 0, rng.range(0, 6)));
    ReducedWalk canon = canonical_alpha(H, a);
    // In the class, idempotent, and class-invariant.
    CHECK(alpha_equivalent(H, a, canon));
    CHECK(reduced_equal(canonical_alpha(H, canon), canon));
    ReducedWalk twisted = reduce(compose(H.generators[0].w, a.w));  // abelian: same class
    CHECK(reduced_equal(canonical_alpha(H, twisted), canon));
  }
}

TEST_CASE("make_iso: identity triple and base-change conjugation") {
  GraphPtr theta = theta_graph();
  GroupDescriptor s3 = GroupDescriptor::symmetric(3);
  Rng rng(5);
  GaugeField field = random_field(rng, theta, s3);
  BundlePoint u{0, identity(s3)};
  HolonomyMap H = induced_holonomy_map(field, u);

  HolIso ident = identity_iso(H);
  CHECK(iso_equal(ident, make_iso(identity_graph_iso(theta),
                                  ReducedWalk{Walk::empty_at(theta, 0)}, identity_hom(s3), H, H)));

  // H at u and at u.g differ by conjugation: (id, id_x, conj_{g^-1}) validates.
  GroupElement gshift = random_element(s3, rng);
  HolonomyMap H2 = induced_holonomy_map(field, right_act(u, gshift));
  CHECK_NOTHROW(make_iso(identity_graph_iso(theta), ReducedWalk{Walk::empty_at(theta, 0)},
                         conjugation_hom(inverse(gshift)), H, H2));
}

TEST_CASE("make_iso rejects a wrong phi with a witnessing generator") {
  GraphPtr theta = theta_graph();
  GroupDescriptor s3 = GroupDescriptor::symmetric(3);
  GroupElement sigma = perm(s3, {1, 2, 0});
  HolonomyMap H = HolonomyMap::make(theta, 0, s3, {sigma, sigma});
  // Conjugation by a transposition moves the 3-cycle images.
  GroupHom bad = conjugation_hom(perm(s3, {1, 0, 2}));
  try {
    make_iso(identity_graph_iso(theta), ReducedWalk{Walk::empty_at(theta, 0)}, bad, H, H);
    CHECK(false);
  } catch (const ValidationError& e) {
    std::string what = e.what();
    CHECK(what.find("generator") != std::string::npos);
    CHECK(what.find("b") != std::string::npos);  // first chord of the theta graph
  }
  CHECK_THROWS_AS(
      make_iso(identity_graph_iso(theta), tree_path(theta, H.tree, 1, 0), identity_hom(s3), H,
               HolonomyMap::make(theta, 0, s3, {sigma, sigma})),
      ValidationError);  // endpoint law: alpha must start at the codomain base
}

TEST_CASE("groupoid laws on seeded random triples (both categories)") {
  Rng rng(6);
  const std::vector<GroupDescriptor> kinds = {GroupDescriptor::cyclic(6),
                                              GroupDescriptor::symmetric(4),
                                              GroupDescriptor::su2()};
  for (int t = 0; t < 50; ++t) {
    GraphPtr g = random_connected_graph(rng, 5);
    const GroupDescriptor& d = kinds[static_cast<std::size_t>(t) % kinds.size()];
    HolonomyMap H = random_holonomy_map(rng, g, static_cast<int>(rng.below(g->vertices.size())), d);
    HolIso a = random_hol_iso(rng, H);
    HolIso b = random_hol_iso(rng, a.cod);
    HolIso c = random_hol_iso(rng, b.cod);
    CHECK(iso_equal(compose_iso(c, compose_iso(b, a)), compose_iso(compose_iso(c, b), a)));
    CHECK(iso_equal(compose_iso(a, identity_iso(H)), a));
    CHECK(iso_equal(compose_iso(invert_iso(a), a), identity_iso(H)));

    HolStarIso sa = make_star_iso(a.psi, a.alpha, a.phi, H, a.cod);
    HolStarIso sb = make_star_iso(b.psi, b.alpha, b.phi, a.cod, b.cod);
    CHECK(star_iso_equal(compose_star_iso(invert_star_iso(sa), sa), identity_star_iso(H)));
    CHECK(star_iso_equal(compose_star_iso(sa, identity_star_iso(H)), sa));
    CHECK(star_iso_equal(
        compose_star_iso(sb, compose_star_iso(sa, identity_star_iso(H))),
        compose_star_iso(sb, sa)));
    CHECK_THROWS_AS(compose_iso(a, b), PreconditionError);
  }
}

TEST_CASE("quotient functor: functoriality and non-faithfulness witness") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    GraphPtr g = random_connected_graph(rng, 5);
    HolonomyMap H =
        random_holonomy_map(rng, g, static_cast<int>(rng.below(g->vertices.size())),
                            GroupDescriptor::dihedral(4));
    HolStarIso sa = random_hol_star_iso(rng, H);
    HolStarIso sb = random_hol_star_iso(rng, sa.cod);
    CHECK(iso_equal(quotient_Q(compose_star_iso(sb, sa)),
                    compose_iso(quotient_Q(sb), quotient_Q(sa))));
    CHECK(iso_equal(quotient_Q(identity_star_iso(H)), identity_iso(H)));
  }

  // Two non-thinly-equivalent flat self-arrows collapse under Q.
  GraphPtr theta = theta_graph();
  HolonomyMap flat = HolonomyMap::flat(theta, 0, GroupDescriptor::cyclic(2));
  HolStarIso s1 = make_star_iso(identity_graph_iso(theta), ReducedWalk{Walk::empty_at(theta, 0)},
                                identity_hom(flat.group), flat, flat);
  HolStarIso s2 = make_star_iso(identity_graph_iso(theta), flat.generators[0],
                                identity_hom(flat.group), flat, flat);
  CHECK_FALSE(star_iso_equal(s1, s2));
  CHECK(iso_equal(quotient_Q(s1), quotient_Q(s2)));
}

TEST_CASE("q_not_split_witness: fixtures") {
  QSplitWitness w1 = q_not_split_witness(theta_graph(), GroupDescriptor::cyclic(2));
  CHECK(w1.hol_composite_is_identity);
  CHECK(w1.star_composite_nonempty);
  CHECK(w1.star_composite_alpha.w.length() == 2);

  QSplitWitness w2 = q_not_split_witness(figure_eight_graph(), GroupDescriptor::quaternion8());
  CHECK(w2.hol_composite_is_identity);
  CHECK(w2.star_composite_nonempty);

  CHECK_THROWS_WITH_AS(q_not_split_witness(path_graph(4), GroupDescriptor::cyclic(2)),
                       doctest::Contains("unsuitable"), PreconditionError);

  // Spur-perturbed representatives of the same thin classes compose to the
  // same reduced curve.
  GraphPtr theta = theta_graph();
  Walk spur = step_walk(theta, 0, {{"c", true}, {"c", false}});
  Walk alpha_spurred = compose(w1.alpha.w, compose(spur, Walk::empty_at(theta, 0)));
  CHECK(reduced_equal(reduce(compose(alpha_spurred, w1.alpha_prime.w)),
                      reduce(compose(w1.alpha.w, w1.alpha_prime.w))));
}

TEST_CASE("Q is full: every arrow lifts along its stored representative") {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    GraphPtr g = random_connected_graph(rng, 5);
    HolonomyMap H = random_holonomy_map(rng, g, static_cast<int>(rng.below(g->vertices.size())),
                                        GroupDescriptor::symmetric(3));
    HolIso a = random_hol_iso(rng, H);
    HolStarIso lift = make_star_iso(a.psi, a.alpha, a.phi, a.dom, a.cod);
    HolIso back = quotient_Q(lift);
    CHECK(iso_equal(back, a));
    CHECK(reduced_equal(back.alpha, a.alpha));
  }
}

TEST_CASE("iso round trips through internal consistency re-validation") {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    GraphPtr g = random_connected_graph(rng, 5);
    HolonomyMap H = random_holonomy_map(rng, g, static_cast<int>(rng.below(g->vertices.size())),
                                        GroupDescriptor::quaternion8());
    HolIso a = random_hol_iso(rng, H);
    CHECK(arrow_valid(a.psi, a.alpha, a.phi, a.dom, a.cod));
    HolIso rebuilt = make_iso(a.psi, a.alpha, a.phi, a.dom, a.cod);
    CHECK(iso_equal(a, rebuilt));
  }
}
