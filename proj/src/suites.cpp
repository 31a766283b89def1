#include "hol/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hol/smooth.hpp"

namespace hol {

GraphPtr random_connected_graph(Rng& rng, int max_vertices) {
  int n = rng.range(1, max_vertices);
  std::vector<std::string> vertices;
  for (int i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  int e = 0;
  // Random tree first, then extra edges (parallels and self-loops allowed).
  for (int i = 1; i < n; ++i) {
    int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    edges.emplace_back("e" + std::to_string(e++), vertices[static_cast<std::size_t>(p)],
                       vertices[static_cast<std::size_t>(i)]);
  }
  int extra = rng.range(1, 3);
  for (int k = 0; k < extra; ++k) {
    int a = rng.range(0, n - 1), b = rng.range(0, n - 1);
    edges.emplace_back("e" + std::to_string(e++), vertices[static_cast<std::size_t>(a)],
                       vertices[static_cast<std::size_t>(b)]);
  }
  return Graph::make(vertices, edges);
}

GaugeField random_field(Rng& rng, const GraphPtr& g, const GroupDescriptor& d) {
  std::vector<GroupElement> links;
  links.reserve(g->edges.size());
  for (std::size_t i = 0; i < g->edges.size(); ++i) links.push_back(random_element(d, rng));
  return GaugeField::make(g, d, std::move(links));
}

Walk random_walk_from(Rng& rng, const GraphPtr& g, int from, int len) {
  Walk w = Walk::empty_at(g, from);
  for (int i = 0; i < len; ++i) {
    const auto& outs = g->out[static_cast<std::size_t>(w.end)];
    if (outs.empty()) break;
    w = compose(Walk::make(g, w.end, {outs[rng.below(outs.size())]}), w);
  }
  return w;
}

Walk random_walk_between(Rng& rng, const GraphPtr& g, const SpanningTree& t, int from, int to,
                         int len) {
  Walk head = random_walk_from(rng, g, from, len);
  return compose(tree_path(g, t, head.end, to).w, head);
}

HolonomyMap random_holonomy_map(Rng& rng, const GraphPtr& g, int base, const GroupDescriptor& d) {
  SpanningTree t = spanning_tree(g, base);
  std::vector<GroupElement> images;
  for (std::size_t i = 0; i < chord_edges(g, t).size(); ++i)
    images.push_back(random_element(d, rng));
  return HolonomyMap::make(g, base, d, std::move(images));
}

GroupHom random_group_iso(Rng& rng, const GroupDescriptor& d) {
  if (d.kind == GroupKind::U1)
    return rng.chance(0.5) ? identity_hom(d) : u1_conjugation_hom(d.tolerance);
  if (d.kind == GroupKind::SU2) {
    GroupElement q = random_element(d, rng);
    return su2_conjugation_hom(std::get<Quat>(q.payload), d.tolerance);
  }
  if (rng.chance(0.25)) return identity_hom(d);
  return conjugation_hom(random_element(d, rng));
}

GraphIso random_relabeling(Rng& rng, const GraphPtr& g) {
  std::size_t nv = g->vertices.size(), ne = g->edges.size();
  std::vector<int> vmap(nv), emap(ne);
  std::iota(vmap.begin(), vmap.end(), 0);
  std::iota(emap.begin(), emap.end(), 0);
  for (std::size_t i = nv; i > 1; --i) std::swap(vmap[i - 1], vmap[rng.below(i)]);
  for (std::size_t i = ne; i > 1; --i) std::swap(emap[i - 1], emap[rng.below(i)]);

  std::vector<std::string> vertices;
  for (std::size_t j = 0; j < nv; ++j) vertices.push_back("w" + std::to_string(j));
  std::vector<std::tuple<std::string, std::string, std::string>> edges(ne);
  for (std::size_t i = 0; i < ne; ++i) {
    const Graph::Edge& e = g->edges[i];
    edges[static_cast<std::size_t>(emap[i])] = std::make_tuple(
        "f" + std::to_string(emap[i]),
        vertices[static_cast<std::size_t>(vmap[static_cast<std::size_t>(e.tail)])],
        vertices[static_cast<std::size_t>(vmap[static_cast<std::size_t>(e.head)])]);
  }
  GraphIso iso;
  iso.src = g;
  iso.dst = Graph::make(vertices, edges);
  iso.vmap = vmap;
  iso.emap = emap;
  return iso;
}

namespace {

// Pushforward of H along (psi, alpha, phi): the codomain map for which the
// triple is a holonomy isomorphism by construction.
HolonomyMap pushforward(const HolonomyMap& H, const GraphIso& psi, const ReducedWalk& alpha,
                        const GroupHom& phi) {
  int xp = psi.v(alpha.start());
  SpanningTree tp = spanning_tree(psi.dst, xp);
  GraphIso psi_inv = psi.inverse();
  std::vector<GroupElement> images;
  for (const auto& gen : chord_generators(psi.dst, tp, xp)) {
    Walk pulled = psi_inv.apply(gen.w);
    Walk loop = compose(alpha.w, compose(pulled, invert(alpha.w)));
    images.push_back(phi.apply(evaluate(H, loop)));
  }
  return HolonomyMap::make(psi.dst, xp, H.group, std::move(images));
}

struct ArrowParts {
  GraphIso psi;
  ReducedWalk alpha;
  GroupHom phi;
  HolonomyMap cod;
};

ArrowParts random_arrow_parts(Rng& rng, const HolonomyMap& H) {
  GraphIso psi = random_relabeling(rng, H.graph);
  int z = static_cast<int>(rng.below(H.graph->vertices.size()));
  ReducedWalk alpha = reduce(random_walk_between(rng, H.graph, H.tree, z, H.base, rng.range(0, 3)));
  GroupHom phi = random_group_iso(rng, H.group);
  HolonomyMap cod = pushforward(H, psi, alpha, phi);
  return {psi, alpha, phi, cod};
}

std::vector<GroupDescriptor> acceptance_kinds(double tol) {
  return {GroupDescriptor::cyclic(6),     GroupDescriptor::symmetric(4),
          GroupDescriptor::dihedral(4),   GroupDescriptor::quaternion8(),
          GroupDescriptor::u1(tol),       GroupDescriptor::su2(tol)};
}

std::string tag(std::uint64_t seed, std::uint64_t trial, const GroupDescriptor& d) {
  return "seed=" + std::to_string(seed) + " trial=" + std::to_string(trial) + " group=" + d.str();
}

}  // namespace

HolIso random_hol_iso(Rng& rng, const HolonomyMap& H) {
  ArrowParts p = random_arrow_parts(rng, H);
  return make_iso_exact(p.psi, p.alpha, p.phi, H, p.cod);
}

HolStarIso random_hol_star_iso(Rng& rng, const HolonomyMap& H) {
  ArrowParts p = random_arrow_parts(rng, H);
  return make_star_iso(p.psi, p.alpha, p.phi, H, p.cod);
}

Report run_lemma1_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "lemma1";
  rep.seed = cfg.seed;
  std::uint64_t per_kind = cfg.trials ? cfg.trials : 1000;
  std::uint64_t trial_id = 0;
  for (const auto& kind : acceptance_kinds(cfg.tol)) {
    for (std::uint64_t t = 0; t < per_kind; ++t, ++trial_id) {
      Rng rng = Rng::for_trial(cfg.seed, trial_id);
      GraphPtr g = random_connected_graph(rng, 10);
      GaugeField field = random_field(rng, g, kind);
      Report sub = check_lemma1(field, 1, cfg.seed ^ (trial_id * 0x9e3779b9ull + 1));
      rep.trials++;
      rep.checks += sub.checks;
      if (sub.has_residual) rep.residual(sub.residual_max);
      for (const auto& f : sub.failures) rep.fail(trial_id, f.what + " " + tag(cfg.seed, t, kind));
    }
  }
  return rep;
}

Report run_lemma2_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "lemma2";
  rep.seed = cfg.seed;
  std::uint64_t per_kind = cfg.trials ? cfg.trials : 500;
  std::uint64_t trial_id = 0;
  for (const auto& kind : acceptance_kinds(cfg.tol)) {
    for (std::uint64_t t = 0; t < per_kind; ++t, ++trial_id) {
      Rng rng = Rng::for_trial(cfg.seed, trial_id);
      GraphPtr g = random_connected_graph(rng, 10);
      GaugeField field = random_field(rng, g, kind);
      SpanningTree tree = spanning_tree(g, 0);
      int x = static_cast<int>(rng.below(g->vertices.size()));
      int xp = static_cast<int>(rng.below(g->vertices.size()));
      Walk alpha = random_walk_between(rng, g, tree, x, xp, rng.range(0, 5));
      BundlePoint u{xp, random_element(kind, rng)};
      Walk gamma = random_walk_between(rng, g, tree, xp, xp, rng.range(0, 5));

      // Lemma 2: holonomy at u equals holonomy of the alpha-conjugated loop
      // at the transported point.
      GroupElement lhs = holonomy(field, gamma, u);
      BundlePoint v = transport(field, invert(alpha), u);
      Walk conj_loop = compose(invert(alpha), compose(gamma, alpha));
      GroupElement rhs = holonomy(field, conj_loop, v);
      rep.checks++;
      rep.residual(distance(lhs, rhs));
      if (!equal(lhs, rhs)) rep.fail(trial_id, "lemma2 violated " + tag(cfg.seed, t, kind));

      // Moving the base point within the fiber conjugates the holonomy.
      GroupElement gelem = random_element(kind, rng);
      GroupElement lhs2 = holonomy(field, gamma, right_act(u, gelem));
      GroupElement rhs2 = multiply(multiply(inverse(gelem), lhs), gelem);
      rep.checks++;
      rep.residual(distance(lhs2, rhs2));
      if (!equal(lhs2, rhs2))
        rep.fail(trial_id, "base-point conjugation violated " + tag(cfg.seed, t, kind));
      rep.trials++;
    }
  }
  return rep;
}

Report run_prop1_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "prop1";
  rep.seed = cfg.seed;
  std::uint64_t trials = cfg.trials ? cfg.trials : 200;
  const auto kinds = acceptance_kinds(cfg.tol);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(cfg.seed, t);
    const GroupDescriptor& kind = kinds[t % kinds.size()];
    GraphPtr g = random_connected_graph(rng, 6);
    int base = static_cast<int>(rng.below(g->vertices.size()));
    HolonomyMap H = random_holonomy_map(rng, g, base, kind);
    HolIso a = random_hol_iso(rng, H);
    HolIso b = random_hol_iso(rng, a.cod);
    HolIso c = random_hol_iso(rng, b.cod);

    auto expect = [&](bool ok, const char* what) {
      rep.checks++;
      if (!ok) rep.fail(t, std::string(what) + " " + tag(cfg.seed, t, kind));
    };

    expect(iso_equal(compose_iso(c, compose_iso(b, a)), compose_iso(compose_iso(c, b), a)),
           "hol associativity failed");
    expect(iso_equal(compose_iso(a, identity_iso(H)), a), "hol right identity failed");
    expect(iso_equal(compose_iso(identity_iso(a.cod), a), a), "hol left identity failed");
    expect(iso_equal(compose_iso(invert_iso(a), a), identity_iso(H)), "hol left inverse failed");
    expect(iso_equal(compose_iso(a, invert_iso(a)), identity_iso(a.cod)),
           "hol right inverse failed");

    HolStarIso sa = make_star_iso(a.psi, a.alpha, a.phi, H, a.cod);
    HolStarIso sb = make_star_iso(b.psi, b.alpha, b.phi, a.cod, b.cod);
    HolStarIso sc = make_star_iso(c.psi, c.alpha, c.phi, b.cod, c.cod);
    expect(star_iso_equal(compose_star_iso(sc, compose_star_iso(sb, sa)),
                          compose_star_iso(compose_star_iso(sc, sb), sa)),
           "star associativity failed");
    expect(star_iso_equal(compose_star_iso(sa, identity_star_iso(H)), sa),
           "star right identity failed");
    expect(star_iso_equal(compose_star_iso(identity_star_iso(a.cod), sa), sa),
           "star left identity failed");
    expect(star_iso_equal(compose_star_iso(invert_star_iso(sa), sa), identity_star_iso(H)),
           "star left inverse failed");
    expect(star_iso_equal(compose_star_iso(sa, invert_star_iso(sa)), identity_star_iso(a.cod)),
           "star right inverse failed");

    // Arrow-equality congruence, exercised where the centralizer is the
    // whole group so twisted representatives stay valid.
    bool abelian =
        kind.kind == GroupKind::Cyclic || kind.kind == GroupKind::U1;
    if (abelian && !H.generators.empty()) {
      ReducedWalk twisted = reduce(compose(H.generators[0].w, a.alpha.w));
      HolIso a2 = make_iso_exact(a.psi, twisted, a.phi, H, a.cod);
      expect(iso_equal(a, a2), "abelian class twist should not change the arrow");
      expect(iso_equal(compose_iso(b, a), compose_iso(b, a2)),
             "arrow equality is not a congruence (postcompose)");
      HolIso d = invert_iso(random_hol_iso(rng, H));
      expect(iso_equal(compose_iso(a, d), compose_iso(a2, d)),
             "arrow equality is not a congruence (precompose)");
    }
    rep.trials++;
  }
  return rep;
}

Report run_prop2_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "prop2";
  rep.seed = cfg.seed;
  std::uint64_t trials = cfg.trials ? cfg.trials : 200;
  const auto kinds = acceptance_kinds(cfg.tol);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(cfg.seed, t);
    const GroupDescriptor& kind = kinds[t % kinds.size()];
    GraphPtr g = random_connected_graph(rng, 6);
    int base = static_cast<int>(rng.below(g->vertices.size()));
    HolonomyMap H = random_holonomy_map(rng, g, base, kind);
    HolStarIso sa = random_hol_star_iso(rng, H);
    HolStarIso sb = random_hol_star_iso(rng, sa.cod);

    rep.checks++;
    if (!iso_equal(quotient_Q(compose_star_iso(sb, sa)),
                   compose_iso(quotient_Q(sb), quotient_Q(sa))))
      rep.fail(t, "Q functoriality on composition failed " + tag(cfg.seed, t, kind));
    rep.checks++;
    if (!iso_equal(quotient_Q(identity_star_iso(H)), identity_iso(H)))
      rep.fail(t, "Q functoriality on identities failed " + tag(cfg.seed, t, kind));
    rep.trials++;
  }

  // Non-faithfulness witness: flat map on the theta graph, one self-arrow
  // carried by the empty loop, one by a chord generator loop.
  {
    GraphPtr theta = theta_graph();
    HolonomyMap flat = HolonomyMap::flat(theta, 0, GroupDescriptor::cyclic(2));
    HolStarIso s1 = make_star_iso(identity_graph_iso(theta),
                                  ReducedWalk{Walk::empty_at(theta, 0)},
                                  identity_hom(flat.group), flat, flat);
    HolStarIso s2 = make_star_iso(identity_graph_iso(theta), flat.generators[0],
                                  identity_hom(flat.group), flat, flat);
    rep.checks++;
    if (star_iso_equal(s1, s2) || !iso_equal(quotient_Q(s1), quotient_Q(s2)))
      rep.fail(0, "non-faithfulness witness not reproduced on the theta graph");
    else
      rep.notes.push_back("Q non-faithfulness witnessed on theta graph (flat map)");
  }

  // Non-splitting witness on both bundled fixtures.
  for (const auto& [graph, group, name] :
       {std::make_tuple(theta_graph(), GroupDescriptor::cyclic(2), "theta"),
        std::make_tuple(figure_eight_graph(), GroupDescriptor::quaternion8(), "figure-eight")}) {
    rep.checks++;
    QSplitWitness w = q_not_split_witness(graph, group);
    if (!w.hol_composite_is_identity || !w.star_composite_nonempty)
      rep.fail(0, std::string("Q non-splitting witness failed on ") + name + ": " + w.summary);
    else
      rep.notes.push_back(std::string("Q non-splitting witnessed on ") + name + ": " + w.summary);
  }

  // Simply connected graphs are unsuitable and must be rejected.
  rep.checks++;
  try {
    q_not_split_witness(path_graph(3), GroupDescriptor::cyclic(2));
    rep.fail(0, "q_not_split_witness accepted a tree graph");
  } catch (const PreconditionError&) {
    rep.notes.push_back("tree graph correctly rejected as unsuitable");
  }
  return rep;
}

Report run_roundtrip_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "roundtrip";
  rep.seed = cfg.seed;
  std::uint64_t trials = cfg.trials ? cfg.trials : 300;
  const std::vector<GroupDescriptor> kinds = {
      GroupDescriptor::cyclic(2),   GroupDescriptor::cyclic(6),  GroupDescriptor::cyclic(24),
      GroupDescriptor::symmetric(3), GroupDescriptor::symmetric(4),
      GroupDescriptor::dihedral(4), GroupDescriptor::dihedral(12),
      GroupDescriptor::quaternion8()};
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(cfg.seed, t);
    const GroupDescriptor& kind = kinds[t % kinds.size()];
    GraphPtr g = random_connected_graph(rng, 12);
    int base = static_cast<int>(rng.below(g->vertices.size()));
    HolonomyMap H = random_holonomy_map(rng, g, base, kind);
    ReconstructionResult r = reconstruct(H);
    rep.checks++;
    if (!object_equal(induced_holonomy_map(r.field, r.basepoint), H))
      rep.fail(t, "reconstruction round trip failed " + tag(cfg.seed, t, kind));
    rep.trials++;
  }

  // Representation-theorem analog, exhaustively at small scale: every field
  // inducing H arises from the spanning-tree reconstruction by a gauge
  // transformation fixing the base point.
  GraphPtr chorded = Graph::make({"x", "y", "z"}, {{"a", "x", "y"},
                                                   {"b", "y", "z"},
                                                   {"c", "x", "z"},
                                                   {"d", "y", "y"}});
  const std::vector<std::pair<GraphPtr, GroupDescriptor>> spaces = {
      {theta_graph(), GroupDescriptor::cyclic(2)},
      {theta_graph(), GroupDescriptor::dihedral(2)},
      {theta_graph(), GroupDescriptor::symmetric(3)},
      {theta_graph(), GroupDescriptor::quaternion8()},
      {figure_eight_graph(), GroupDescriptor::cyclic(8)},
      {figure_eight_graph(), GroupDescriptor::quaternion8()},
      {chorded, GroupDescriptor::cyclic(4)}};
  for (const auto& [g, kind] : spaces) {
    auto elements = enumerate_group(kind);
    std::size_t m = g->edges.size();
    std::vector<std::size_t> idx(m, 0);
    std::uint64_t count = 0;
    for (;;) {
      std::vector<GroupElement> links;
      for (std::size_t i = 0; i < m; ++i) links.push_back(elements[idx[i]]);
      GaugeField field = GaugeField::make(g, kind, std::move(links));
      BundlePoint u{0, identity(kind)};
      HolonomyMap H = induced_holonomy_map(field, u);
      ReconstructionResult r = reconstruct(H);
      GaugeTransformation tr{kind, {}};
      for (std::size_t v = 0; v < g->vertices.size(); ++v)
        tr.at.push_back(
            transport(field, tree_path(g, H.tree, 0, static_cast<int>(v)).w, u).fiber);
      rep.checks++;
      bool ok = equal(tr.at[0], identity(kind));
      GaugeField gauged = apply_gauge(r.field, tr);
      for (std::size_t i = 0; i < m && ok; ++i) ok = equal(gauged.links[i], field.links[i]);
      if (!ok)
        rep.fail(count, "representation analog failed on " + kind.str() + " field #" +
                            std::to_string(count));
      ++count;
      std::size_t pos = 0;
      while (pos < m && ++idx[pos] == elements.size()) idx[pos++] = 0;
      if (pos == m) break;
    }
    rep.notes.push_back("exhaustive representation check: " + std::to_string(count) +
                        " fields over " + kind.str());
  }
  return rep;
}

Report run_thm1_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "thm1";
  rep.seed = cfg.seed;
  std::uint64_t trials = cfg.trials ? cfg.trials : 200;
  const auto kinds = acceptance_kinds(cfg.tol);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(cfg.seed, t);
    const GroupDescriptor& kind = kinds[t % kinds.size()];
    GraphPtr g = random_connected_graph(rng, 5);
    GaugeField src = random_field(rng, g, kind);
    BundlePoint u{static_cast<int>(rng.below(g->vertices.size())), random_element(kind, rng)};

    // Build an isomorphic partner: relabel, push links through phi, gauge.
    GraphIso relabel = random_relabeling(rng, g);
    GroupHom phi = random_group_iso(rng, kind);
    std::vector<GroupElement> mid_links(g->edges.size(), identity(kind));
    for (std::size_t i = 0; i < g->edges.size(); ++i)
      mid_links[static_cast<std::size_t>(relabel.emap[i])] = phi.apply(src.links[i]);
    GaugeField mid = GaugeField::make(relabel.dst, kind, std::move(mid_links));
    GaugeTransformation tr{kind, {}};
    for (std::size_t v = 0; v < g->vertices.size(); ++v) tr.at.push_back(random_element(kind, rng));
    GaugeField dst = apply_gauge(mid, tr);

    BundleMorphism true_m;
    true_m.psi = relabel;
    true_m.phi = phi;
    true_m.frame.reserve(g->vertices.size());
    for (std::size_t v = 0; v < g->vertices.size(); ++v)
      true_m.frame.push_back(tr.at[static_cast<std::size_t>(relabel.vmap[v])]);

    GaugeEquivalenceOptions opts;
    BundlePoint u_prime{0, identity(kind)};
    if (kind.finite()) {
      int z = static_cast<int>(rng.below(g->vertices.size()));
      u_prime = BundlePoint{relabel.v(z), random_element(kind, rng)};
    } else {
      // Keep the partner base point on the image of the holonomy sub-bundle
      // so the bounded matrix search can realize the connecting curve.
      Walk beta = random_walk_from(rng, g, u.vertex, rng.range(0, 3));
      u_prime = morphism_apply(true_m, transport(src, beta, u));
      opts.psi_candidates = std::vector<GraphIso>{relabel};
      opts.phi_candidates = std::vector<GroupHom>{phi, identity_hom(kind)};
    }

    GaugeEquivalenceResult res = gauge_equivalent(src, u, dst, u_prime, opts);
    rep.checks++;
    if (res.status != GaugeEquivalenceResult::Status::Equivalent) {
      rep.fail(t, "no certificate for constructed pair " + tag(cfg.seed, t, kind) + ": " +
                      res.detail);
      rep.trials++;
      continue;
    }
    CertificateCheck check = verify_certificate(*res.certificate, src, u, dst, u_prime);
    rep.checks++;
    rep.residual(check.residual);
    if (!check.ok)
      rep.fail(t, "certificate failed independent verification " + tag(cfg.seed, t, kind) + ": " +
                      check.detail);
    else if (kind.finite() && check.residual != 0.0)
      rep.fail(t, "finite-kind certificate has nonzero residual " + tag(cfg.seed, t, kind));
    else if (!kind.finite() && check.residual > 1e-8)
      rep.fail(t, "matrix-kind certificate residual " + format_double(check.residual) + " " +
                      tag(cfg.seed, t, kind));
    rep.trials++;
  }
  return rep;
}

Report run_thm2_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "thm2";
  rep.seed = cfg.seed;
  std::uint64_t trials = cfg.trials ? cfg.trials : 200;
  const auto kinds = acceptance_kinds(cfg.tol);
  std::uint64_t adjusted = 0;

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(cfg.seed, t);
    const GroupDescriptor& kind = kinds[t % kinds.size()];
    GraphPtr g = random_connected_graph(rng, 5);
    int base = static_cast<int>(rng.below(g->vertices.size()));
    HolonomyMap H = random_holonomy_map(rng, g, base, kind);
    HolIso a = random_hol_iso(rng, H);
    HolIso b = random_hol_iso(rng, a.cod);
    ReconstructionResult ra = reconstruct(H);
    ReconstructionResult rb = reconstruct(a.cod);
    ReconstructionResult rc = reconstruct(b.cod);

    auto expect = [&](bool ok, const char* what) {
      rep.checks++;
      if (!ok) rep.fail(t, std::string(what) + " " + tag(cfg.seed, t, kind));
    };

    // C(1) = 1.
    BundleMorphism cid = functor_on_arrow(identity_iso(H), ra.field, ra.basepoint, ra.field,
                                          ra.basepoint);
    BundleMorphism expected_id{identity_graph_iso(g), identity_hom(kind),
                               std::vector<GroupElement>(g->vertices.size(), identity(kind))};
    expect(morphism_equal(cid, expected_id), "C(identity) is not the identity morphism");

    // C(b . a) = C(b) . C(a).
    BundleMorphism m_comp = functor_on_arrow(compose_iso(b, a), ra.field, ra.basepoint, rc.field,
                                             rc.basepoint);
    BundleMorphism m_a = functor_on_arrow(a, ra.field, ra.basepoint, rb.field, rb.basepoint);
    BundleMorphism m_b = functor_on_arrow(b, rb.field, rb.basepoint, rc.field, rc.basepoint);
    expect(morphism_equal(m_comp, compose(m_b, m_a)), "functor law on composition failed");

    // Fullness round trip through extraction.
    ExtractResult ex = extract_hol_iso(m_a, ra.field, ra.basepoint, rb.field, rb.basepoint);
    if (ex.adjusted) ++adjusted;
    BundleMorphism m_back =
        functor_on_arrow(ex.iso, ra.field, ra.basepoint, rb.field, rb.basepoint);
    expect(morphism_equal(m_back, m_a), "fullness round trip C(extract(m)) = m failed");

    // Faithfulness on the pair (a, a) and on an abelian class twist.
    FunctorCheckReport fc = faithfulness_check(a, a);
    expect(fc.ok, "faithfulness violated on an identical pair");
    bool abelian = kind.kind == GroupKind::Cyclic || kind.kind == GroupKind::U1;
    if (abelian && !H.generators.empty()) {
      HolIso a2 = make_iso_exact(a.psi, reduce(compose(H.generators[0].w, a.alpha.w)), a.phi, H,
                                 a.cod);
      FunctorCheckReport fc2 = faithfulness_check(a, a2);
      expect(fc2.ok, "faithfulness violated on a class-twisted pair");
    }
    rep.trials++;
  }

  // Deterministic faithfulness fixture: two arrows differing only by a
  // central-in-Phi (but not central-in-G) twist of phi must have distinct
  // functor images.
  {
    GraphPtr theta = theta_graph();
    GroupDescriptor s3 = GroupDescriptor::symmetric(3);
    GroupElement swap01{s3, std::vector<int>{1, 0, 2}};
    HolonomyMap H = HolonomyMap::make(theta, 0, s3, {swap01, swap01});
    ReducedWalk tau = tree_path(theta, H.tree, 0, 0);
    HolIso a1 = make_iso_exact(identity_graph_iso(theta), tau, identity_hom(s3), H, H);
    HolIso a2 = make_iso_exact(identity_graph_iso(theta), tau, conjugation_hom(swap01), H, H);
    rep.checks++;
    if (iso_equal(a1, a2))
      rep.fail(0, "phi-twisted arrows should be distinct");
    FunctorCheckReport fc = faithfulness_check(a1, a2);
    rep.checks++;
    if (!fc.ok) rep.fail(0, "faithfulness violated on the phi-twist fixture: " + fc.detail);
  }

  // Essential surjectivity.
  std::uint64_t ess_trials = std::max<std::uint64_t>(trials / 2, 1);
  for (std::uint64_t t = 0; t < ess_trials; ++t) {
    Rng rng = Rng::for_trial(cfg.seed + 0x5u, t);
    const GroupDescriptor& kind = kinds[t % kinds.size()];
    GraphPtr g = random_connected_graph(rng, 6);
    GaugeField field = random_field(rng, g, kind);
    BundlePoint u{static_cast<int>(rng.below(g->vertices.size())), random_element(kind, rng)};
    EssentialSurjectivityReport es = essential_surjectivity_check(field, u);
    rep.checks++;
    rep.residual(es.residual);
    if (!es.ok)
      rep.fail(t, "essential surjectivity certificate failed " + tag(cfg.seed, t, kind));
    else if (kind.finite() && es.residual != 0.0)
      rep.fail(t, "essential surjectivity residual nonzero " + tag(cfg.seed, t, kind));
    else if (!kind.finite() && es.residual > 1e-8)
      rep.fail(t, "essential surjectivity residual " + format_double(es.residual) + " " +
                      tag(cfg.seed, t, kind));
    rep.trials++;
  }

  rep.notes.push_back("extract_adjustment_cases=" + std::to_string(adjusted));
  return rep;
}

namespace {

Walk lattice_rect_walk(const GaugeField& field, int i0, int j0, int i1, int j1) {
  const GraphPtr& g = field.graph;
  std::vector<EdgeStep> steps;
  auto ex = [&](int i, int j) { return g->edge("ex" + std::to_string(i) + "_" + std::to_string(j)); };
  auto ey = [&](int i, int j) { return g->edge("ey" + std::to_string(i) + "_" + std::to_string(j)); };
  for (int i = i0; i < i1; ++i) steps.push_back({ex(i, j0), true});
  for (int j = j0; j < j1; ++j) steps.push_back({ey(i1, j), true});
  for (int i = i1 - 1; i >= i0; --i) steps.push_back({ex(i, j1), false});
  for (int j = j1 - 1; j >= j0; --j) steps.push_back({ey(i0, j), false});
  return Walk::make(g, g->vertex(lattice_vertex_name(i0, j0, 0, 2)), std::move(steps));
}

// Staircase approximation of the triangle (0,0) -> (a,a) -> (a,0): the
// diagonal picks up the genuine first-order discretization error (area
// defect for U1, Trotter splitting for SU2).
Walk lattice_staircase_triangle(const GaugeField& field, int k) {
  const GraphPtr& g = field.graph;
  std::vector<EdgeStep> steps;
  auto ex = [&](int i, int j) { return g->edge("ex" + std::to_string(i) + "_" + std::to_string(j)); };
  auto ey = [&](int i, int j) { return g->edge("ey" + std::to_string(i) + "_" + std::to_string(j)); };
  for (int c = 0; c < k; ++c) {
    steps.push_back({ex(c, c), true});
    steps.push_back({ey(c + 1, c), true});
  }
  for (int j = k - 1; j >= 0; --j) steps.push_back({ey(k, j), false});
  for (int i = k - 1; i >= 0; --i) steps.push_back({ex(i, 0), false});
  return Walk::make(g, g->vertex(lattice_vertex_name(0, 0, 0, 2)), std::move(steps));
}

PiecewiseSmoothCurve diagonal_triangle(double a) {
  Point p0{0, 0, 0}, p1{a, a, 0}, p2{a, 0, 0};
  return PiecewiseSmoothCurve::make(
      2, {Segment::line(p0, p1), Segment::line(p1, p2), Segment::line(p2, p0)});
}

PiecewiseSmoothCurve rect_curve(double x0, double y0, double x1, double y1) {
  Point p0{x0, y0, 0}, p1{x1, y0, 0}, p2{x1, y1, 0}, p3{x0, y1, 0};
  return PiecewiseSmoothCurve::make(2, {Segment::line(p0, p1), Segment::line(p1, p2),
                                        Segment::line(p2, p3), Segment::line(p3, p0)});
}

}  // namespace

Report run_smooth_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "smooth";
  rep.seed = cfg.seed;
  std::uint64_t axiom_trials = cfg.trials ? cfg.trials : 100;

  GaugePotential quad = GaugePotential::polynomial_u1(
      2, {{0.0, 0.0, 0.3, 0.0, 0.1, 0.2}, {0.1, 0.4, 0.0, 0.25, 0.0, 0.15}});
  GaugePotential linear = GaugePotential::polynomial_u1(2, {{0.0}, {0.0, 0.05}});
  GaugePotential su2 = GaugePotential::constant_su2(
      2, {std::array<double, 3>{0.3, 0.2, 0.1}, std::array<double, 3>{-0.2, 0.4, 0.15}});

  // Abelian closed form at 10^4 total steps.
  {
    PiecewiseSmoothCurve rect = rect_curve(0.2, 0.3, 0.7, 0.7);
    GroupElement got = transport_ode(quad, rect, 2500);
    double flux = u1_rect_flux(quad, Point{0.2, 0.3, 0}, 0.5, 0.4);
    double angle = std::fmod(std::fmod(-flux, 6.283185307179586) + 6.283185307179586,
                             6.283185307179586);
    GroupElement want{quad.group, angle};
    double r = distance(got, want);
    rep.checks++;
    rep.residual(r);
    if (r > 1e-6) rep.fail(0, "abelian flux closed-form residual " + format_double(r));
    rep.notes.push_back("flux_residual=" + format_double(r));
  }

  // Integrator order on a curved path under the non-abelian potential.
  {
    PiecewiseSmoothCurve circle =
        PiecewiseSmoothCurve::make(2, {Segment::arc(Point{0.1, -0.2, 0}, 0.7, 0.3, 0.3 + 6.283185307179586)});
    GroupElement ref = transport_ode(su2, circle, 8192);
    std::vector<double> ns, errs;
    for (int n : {64, 128, 256, 512}) {
      ns.push_back(n);
      errs.push_back(std::max(distance(transport_ode(su2, circle, n), ref), 1e-16));
    }
    double slope = -loglog_slope(ns, errs);
    rep.checks++;
    rep.notes.push_back("integrator_order=" + format_double(slope));
    if (std::fabs(slope - 2.0) > 0.2)
      rep.fail(0, "integrator convergence order " + format_double(slope) + " not within 2 +- 0.2");
  }

  // Axioms (1) and (2) for both matrix kinds.
  for (const GaugePotential* A : {&quad, &su2}) {
    Report sub = axiom_check(*A, Point{0.1, 0.1, 0}, cfg.seed, axiom_trials, 2500);
    rep.trials += sub.trials;
    rep.checks += sub.checks;
    rep.residual(sub.residual_max);
    for (const auto& f : sub.failures) rep.fail(f.trial, f.what);
  }

  // Family smoothness: radius family with the analytic flux derivative,
  // rectangle and translation families for SU2.
  {
    LoopFamily circles;
    circles.catalog = LoopFamily::Catalog::Circles;
    circles.basepoint = Point{0.3, 0.2, 0};
    circles.normal = Point{1, 0, 0};
    circles.lo0 = 0.2;
    circles.hi0 = 0.8;
    FamilyReport fr = family_smoothness_check(linear, circles, 17, 768);
    rep.checks += fr.report.checks;
    for (const auto& f : fr.report.failures) rep.fail(f.trial, "circle family: " + f.what);
    rep.notes.push_back("circle_family_dHdr_error=" + format_double(fr.analytic_derivative_error));

    LoopFamily rects;
    rects.catalog = LoopFamily::Catalog::Rectangles;
    rects.basepoint = Point{0.1, 0.1, 0};
    rects.lo0 = rects.lo1 = 0.2;
    rects.hi0 = rects.hi1 = 0.6;
    FamilyReport fr2 = family_smoothness_check(su2, rects, 7, 512);
    rep.checks += fr2.report.checks;
    for (const auto& f : fr2.report.failures) rep.fail(f.trial, "rectangle family: " + f.what);

    LoopFamily lasso;
    lasso.catalog = LoopFamily::Catalog::Lasso;
    lasso.basepoint = Point{0.0, 0.0, 0};
    lasso.normal = Point{0, 1, 0};
    lasso.lo0 = lasso.lo1 = 0.3;
    lasso.hi0 = lasso.hi1 = 0.7;
    lasso.lasso_radius = 0.2;
    FamilyReport fr3 = family_smoothness_check(su2, lasso, 7, 512);
    rep.checks += fr3.report.checks;
    for (const auto& f : fr3.report.failures) rep.fail(f.trial, "lasso family: " + f.what);
  }

  // Lattice-continuum consistency.
  {
    GaugeField lat = lattice_discretize(linear, Point{0, 0, 0}, Point{1, 1, 0}, 64);
    Walk plaq = lattice_rect_walk(lat, 0, 0, 1, 1);
    GroupElement wil = holonomy(lat, plaq, BundlePoint{plaq.start, identity(lat.group)});
    double flux = u1_rect_flux(linear, Point{0, 0, 0}, 1.0 / 64, 1.0 / 64);
    double got = std::get<double>(wil.payload);
    double want = std::fmod(std::fmod(-flux, 6.283185307179586) + 6.283185307179586,
                            6.283185307179586);
    double rel = std::fabs(got - want) / std::max(std::fabs(flux), 1e-12);
    rep.checks++;
    rep.notes.push_back("plaquette_rel_error=" + format_double(rel));
    if (rel > 1e-3) rep.fail(0, "plaquette flux relative error " + format_double(rel));
  }
  // Grid-aligned rectangles are exact for this catalog (the midpoint rule is
  // exact through degree 1 along each edge and the closed-loop quadrature
  // defects cancel; constant SU2 links are exact exponentials), so the mesh
  // study runs on a staircase against its diagonal target.
  for (const GaugePotential* A : {&quad, &su2}) {
    std::vector<double> hs, errs;
    PiecewiseSmoothCurve tri = diagonal_triangle(0.5);
    GroupElement ref = transport_ode(*A, tri, 2048);
    for (int res : {4, 8, 16, 32}) {
      GaugeField lat = lattice_discretize(*A, Point{0, 0, 0}, Point{1, 1, 0}, res);
      Walk loop = lattice_staircase_triangle(lat, res / 2);
      GroupElement wil = holonomy(lat, loop, BundlePoint{loop.start, identity(lat.group)});
      hs.push_back(1.0 / res);
      errs.push_back(std::max(distance(wil, ref), 1e-16));
    }
    double slope = loglog_slope(hs, errs);
    rep.checks++;
    rep.notes.push_back("lattice_convergence_slope=" + format_double(slope));
    if (slope < 1.0)
      rep.fail(0, "lattice Wilson loops converge at slope " + format_double(slope) + " < 1");
  }
  return rep;
}

std::vector<std::string> suite_names() {
  return {"lemma1", "lemma2", "prop1", "prop2", "roundtrip", "thm1", "thm2", "smooth"};
}

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "lemma1") return run_lemma1_suite(cfg);
  if (name == "lemma2") return run_lemma2_suite(cfg);
  if (name == "prop1") return run_prop1_suite(cfg);
  if (name == "prop2") return run_prop2_suite(cfg);
  if (name == "roundtrip") return run_roundtrip_suite(cfg);
  if (name == "thm1") return run_thm1_suite(cfg);
  if (name == "thm2") return run_thm2_suite(cfg);
  if (name == "smooth") return run_smooth_suite(cfg);
  throw PreconditionError("unknown suite: " + name +
                          " (expected lemma1, lemma2, prop1, prop2, roundtrip, thm1, thm2, smooth)");
}

}  // namespace hol
