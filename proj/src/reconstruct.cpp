#include "hol/reconstruct.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace hol {

ReconstructionResult reconstruct(const HolonomyMap& H) {
  std::vector<GroupElement> links(H.graph->edges.size(), identity(H.group));
  for (std::size_t i = 0; i < H.chords.size(); ++i)
    links[static_cast<std::size_t>(H.chords[i])] = H.images[i];
  ReconstructionResult r{GaugeField::make(H.graph, H.group, std::move(links)),
                         BundlePoint{H.base, identity(H.group)}};
  return r;
}

BundleMorphism functor_on_arrow(const HolIso& a, const GaugeField& src, const BundlePoint& u,
                                const GaugeField& dst, const BundlePoint& u_prime) {
  if (!object_equal(induced_holonomy_map(src, u), a.dom))
    throw PreconditionError("functor_on_arrow: (src, u) does not induce the arrow's domain");
  if (!object_equal(induced_holonomy_map(dst, u_prime), a.cod))
    throw PreconditionError("functor_on_arrow: (dst, u') does not induce the arrow's codomain");

  BundlePoint z = transport(src, invert(a.alpha.w), u);
  int y = z.vertex;
  BundleMorphism m;
  m.psi = a.psi;
  m.phi = a.phi;
  m.frame.reserve(src.graph->vertices.size());
  for (std::size_t v = 0; v < src.graph->vertices.size(); ++v) {
    ReducedWalk beta = tree_path(src.graph, a.dom.tree, y, static_cast<int>(v));
    GroupElement fiber_src = transport(src, beta.w, z).fiber;
    GroupElement fiber_dst = transport(dst, a.psi.apply(beta.w), u_prime).fiber;
    m.frame.push_back(multiply(fiber_dst, inverse(a.phi.apply(fiber_src))));
  }
  return m;
}


ExtractResult extract_hol_iso(const BundleMorphism& m, const GaugeField& src,
                              const BundlePoint& u, const GaugeField& dst,
                              const BundlePoint& u_prime) {
  if (!morphism_preserves_connection(m, src, dst))
    throw PreconditionError("extract_hol_iso: morphism does not preserve the connection");

  HolonomyMap H = induced_holonomy_map(src, u);
  HolonomyMap Hp = induced_holonomy_map(dst, u_prime);
  int y = m.psi.inverse().v(u_prime.vertex);
  ReducedWalk tau = tree_path(src.graph, H.tree, y, H.base);
  BundlePoint z0 = morphism_apply(morphism_inverse(m), u_prime);
  if (z0.vertex != y) throw Error("extract_hol_iso: inverse image off the expected fiber (bug)");

  // Aim for a curve whose lift through z0 ends exactly at u: need a loop
  // delta at the base with W(delta . tau) . fiber(z0) = fiber(u), i.e.
  // H(delta) = fib(u)^-1 target W_tau^-1 fib(u) inside the holonomy group.
  GroupElement w_tau = transport(src, tau.w, BundlePoint{y, identity(src.group)}).fiber;
  GroupElement target_wdelta =
      multiply(multiply(u.fiber, inverse(z0.fiber)), inverse(w_tau));
  GroupElement h_star =
      multiply(multiply(inverse(u.fiber), target_wdelta), u.fiber);

  std::optional<std::vector<int>> word = word_for_element(H.images, h_star);

  if (word) {
    ReducedWalk alpha =
        reduce(compose(expand_word(*word, H.generators, H.graph, H.base), tau.w));
    HolIso iso = make_iso_exact(m.psi, alpha, m.phi, H, Hp);
    return {iso, false, identity(src.group)};
  }

  // No exact lift: keep the tree path and absorb the frame defect into phi
  // by an inner conjugation. The diagram commutes again, but the functor
  // image of the result may differ from m; callers log these cases.
  BundlePoint lift_end = transport(src, tau.w, z0);
  GroupElement c = multiply(inverse(u.fiber), lift_end.fiber);
  GroupHom phi_adj = compose_hom(m.phi, conjugation_hom(inverse(c)));
  HolIso iso = make_iso_exact(m.psi, tau, phi_adj, H, Hp);
  return {iso, true, c};
}

namespace {

// Breadth-first search over words in `gens` for a value satisfying `pred`;
// exact deduplication for finite kinds, tolerance-based with depth and
// state caps for matrix kinds.
std::optional<std::vector<int>> word_satisfying(
    const std::vector<GroupElement>& gens, const GroupDescriptor& d,
    const std::function<bool(const GroupElement&)>& pred, int max_depth, std::size_t state_cap) {
  GroupElement e = identity(d);
  if (pred(e)) return std::vector<int>{};
  struct Node {
    GroupElement value;
    std::vector<int> word;
  };
  bool finite = d.finite();
  std::set<std::uint64_t> seen_keys;
  std::vector<GroupElement> seen_values;
  if (finite)
    seen_keys.insert(element_key(e));
  else
    seen_values.push_back(e);
  auto known = [&](const GroupElement& g) {
    if (finite) return !seen_keys.insert(element_key(g)).second;
    for (const auto& s : seen_values)
      if (equal(s, g)) return true;
    if (seen_values.size() < state_cap) seen_values.push_back(g);
    return false;
  };
  std::deque<Node> queue{{e, {}}};
  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    if (!finite && static_cast<int>(cur.word.size()) >= max_depth) continue;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (int sign : {+1, -1}) {
        int letter = sign * (static_cast<int>(i) + 1);
        if (!cur.word.empty() && cur.word.back() == -letter) continue;
        GroupElement value = multiply(sign > 0 ? gens[i] : inverse(gens[i]), cur.value);
        std::vector<int> word = cur.word;
        word.push_back(letter);
        if (pred(value)) return word;
        if (!known(value)) queue.push_back({value, std::move(word)});
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CertificateCheck verify_certificate(const EquivalenceCertificate& cert, const GaugeField& src,
                                    const BundlePoint& u, const GaugeField& dst,
                                    const BundlePoint& u_prime) {
  CertificateCheck out;
  HolonomyMap H = induced_holonomy_map(src, u);
  HolonomyMap Hp = induced_holonomy_map(dst, u_prime);
  if (!object_equal(H, cert.iso.dom) || !object_equal(Hp, cert.iso.cod)) {
    out.detail = "certificate objects do not match the induced holonomy maps";
    return out;
  }
  std::string why;
  if (!arrow_valid(cert.iso.psi, cert.iso.alpha, cert.iso.phi, H, Hp, &why)) {
    out.detail = "holonomy isomorphism diagram fails: " + why;
    return out;
  }
  double r = morphism_connection_residual(cert.morphism, src, dst);
  out.residual = r;
  if (src.group.finite() ? r != 0.0 : r > src.group.tolerance * 10) {
    out.detail = "morphism violates the connection condition (residual " + format_double(r) + ")";
    return out;
  }
  BundlePoint z = transport(src, invert(cert.iso.alpha.w), u);
  BundlePoint mapped = morphism_apply(cert.morphism, z);
  double base_dev = mapped.vertex == u_prime.vertex ? distance(mapped.fiber, u_prime.fiber) : 1.0;
  out.residual = std::max(out.residual, mapped.vertex == u_prime.vertex ? base_dev : 1.0);
  if (mapped.vertex != u_prime.vertex ||
      (src.group.finite() ? base_dev != 0.0 : base_dev > src.group.tolerance * 10)) {
    out.detail = "morphism does not send the transported base frame to the target base point";
    return out;
  }
  out.ok = true;
  return out;
}

HolIsoSearchResult find_hol_iso(const HolonomyMap& H, const HolonomyMap& Hp,
                                const GaugeEquivalenceOptions& opts) {
  HolIsoSearchResult out;

  std::vector<GraphIso> psis;
  std::vector<GroupHom> phis;
  bool complete_psi = !opts.psi_candidates.has_value();
  bool complete_phi = !opts.phi_candidates.has_value();
  try {
    psis = opts.psi_candidates ? *opts.psi_candidates
                               : graph_isomorphisms(H.graph, Hp.graph, opts.max_vertices);
    phis = opts.phi_candidates ? *opts.phi_candidates
                               : isomorphism_search(H.group, Hp.group, opts.max_group_order);
  } catch (const BoundsError& e) {
    out.status = GaugeEquivalenceResult::Status::Inconclusive;
    out.detail = std::string("search bounds exceeded: ") + e.what();
    return out;
  }

  bool finite = H.group.finite() && Hp.group.finite();

  for (const auto& psi : psis) {
    int y = psi.inverse().v(Hp.base);
    ReducedWalk tau = tree_path(H.graph, H.tree, y, H.base);
    Walk sigma = psi.apply(tau.w);
    // Conjugated images of the source generators seen from the codomain base.
    std::vector<GroupElement> w_hat;
    w_hat.reserve(H.generators.size());
    for (const auto& gen : H.generators) {
      Walk loop = compose(invert(sigma), compose(psi.apply(gen.w), sigma));
      w_hat.push_back(evaluate(Hp, loop));
    }
    for (const auto& phi : phis) {
      std::vector<GroupElement> targets;
      targets.reserve(H.images.size());
      for (const auto& im : H.images) targets.push_back(phi.apply(im));

      auto matches = [&](const GroupElement& d) {
        GroupElement dinv = inverse(d);
        for (std::size_t i = 0; i < targets.size(); ++i)
          if (!equal(targets[i], multiply(multiply(dinv, w_hat[i]), d))) return false;
        return true;
      };

      std::optional<std::vector<int>> word;
      if (H.group.kind == GroupKind::U1) {
        // Abelian: the conjugation freedom is vacuous.
        bool all = true;
        for (std::size_t i = 0; i < targets.size(); ++i)
          if (!equal(targets[i], w_hat[i])) all = false;
        if (all) word = std::vector<int>{};
      } else {
        // A word over the conjugated generators realizing a valid
        // conjugator; the same word over the source generators is the loop
        // part of alpha.
        word = word_satisfying(w_hat, Hp.group, matches, opts.matrix_word_depth,
                               opts.matrix_state_cap);
      }

      if (word) {
        ReducedWalk alpha =
            reduce(compose(expand_word(*word, H.generators, H.graph, H.base), tau.w));
        out.iso = make_iso_exact(psi, alpha, phi, H, Hp);
        out.status = GaugeEquivalenceResult::Status::Equivalent;
        return out;
      }
    }
  }

  if (!finite || !complete_psi || !complete_phi) {
    out.status = GaugeEquivalenceResult::Status::Inconclusive;
    out.detail = finite ? "no isomorphism among the supplied candidates"
                        : "no isomorphism found within matrix search bounds";
    return out;
  }

  out.status = GaugeEquivalenceResult::Status::Refuted;
  std::ostringstream os;
  os << "complete search exhausted: " << psis.size() << " graph isomorphism(s) x " << phis.size()
     << " group isomorphism(s)";

  // Distinguishing invariant: a loop whose holonomy order differs from the
  // order of its image loop under every graph isomorphism. Element order is
  // invariant under both phi and the conjugation freedom, so a universal
  // order mismatch is a sound witness.
  std::vector<std::vector<int>> words;
  int letters = static_cast<int>(H.images.size());
  for (int len = 1; len <= 3 && letters > 0; ++len) {
    std::vector<int> w(static_cast<std::size_t>(len));
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == len) {
        words.push_back(w);
        return;
      }
      for (int i = 1; i <= letters; ++i) {
        for (int sign : {+1, -1}) {
          int letter = sign * i;
          if (pos > 0 && w[static_cast<std::size_t>(pos - 1)] == -letter) continue;
          w[static_cast<std::size_t>(pos)] = letter;
          self(self, pos + 1);
        }
      }
    };
    rec(rec, 0);
  }
  for (const auto& w : words) {
    Walk loop = expand_word(w, H.generators, H.graph, H.base);
    int so = element_order(evaluate(H, loop));
    std::vector<int> dst_orders;
    bool universal = true;
    for (const auto& psi : psis) {
      int y = psi.inverse().v(Hp.base);
      ReducedWalk tau = tree_path(H.graph, H.tree, y, H.base);
      Walk sigma = psi.apply(tau.w);
      Walk image = compose(invert(sigma), compose(psi.apply(loop), sigma));
      int od = element_order(evaluate(Hp, image));
      dst_orders.push_back(od);
      if (od == so) universal = false;
    }
    if (universal && !psis.empty()) {
      out.witness = RefutationWitness{reduce(loop).w.str(), so, dst_orders};
      os << "; witness loop \"" << out.witness->loop << "\" has holonomy order " << so
         << " but every image loop has a different order";
      break;
    }
  }
  if (psis.empty()) os << "; graphs are not isomorphic";
  out.detail = os.str();
  return out;
}

GaugeEquivalenceResult gauge_equivalent(const GaugeField& src, const BundlePoint& u,
                                        const GaugeField& dst, const BundlePoint& u_prime,
                                        const GaugeEquivalenceOptions& opts) {
  GaugeEquivalenceResult out;
  HolonomyMap H = induced_holonomy_map(src, u);
  HolonomyMap Hp = induced_holonomy_map(dst, u_prime);
  HolIsoSearchResult search = find_hol_iso(H, Hp, opts);
  out.status = search.status;
  out.witness = search.witness;
  out.detail = search.detail;
  if (search.status != GaugeEquivalenceResult::Status::Equivalent) return out;

  EquivalenceCertificate cert;
  cert.iso = *search.iso;
  cert.morphism = functor_on_arrow(cert.iso, src, u, dst, u_prime);
  cert.residual = morphism_connection_residual(cert.morphism, src, dst);
  CertificateCheck check = verify_certificate(cert, src, u, dst, u_prime);
  cert.residual = std::max(cert.residual, check.residual);
  if (!check.ok)
    throw Error("gauge_equivalent: constructed certificate failed self-verification: " +
                check.detail);
  out.certificate = std::move(cert);
  return out;
}

FunctorCheckReport faithfulness_check(const HolIso& a, const HolIso& a_prime) {
  FunctorCheckReport rep;
  if (!object_equal(a.dom, a_prime.dom) || !object_equal(a.cod, a_prime.cod)) {
    rep.ok = false;
    rep.detail = "arrows do not share endpoints";
    return rep;
  }
  ReconstructionResult src = reconstruct(a.dom);
  ReconstructionResult dst = reconstruct(a.cod);
  BundleMorphism ma = functor_on_arrow(a, src.field, src.basepoint, dst.field, dst.basepoint);
  BundleMorphism mb =
      functor_on_arrow(a_prime, src.field, src.basepoint, dst.field, dst.basepoint);
  bool images_equal = morphism_equal(ma, mb);
  bool arrows_equal = iso_equal(a, a_prime);
  if (images_equal && !arrows_equal) {
    rep.ok = false;
    rep.detail = "distinct arrows share a functor image";
  }
  return rep;
}

EssentialSurjectivityReport essential_surjectivity_check(const GaugeField& field,
                                                         const BundlePoint& u) {
  EssentialSurjectivityReport rep;
  HolonomyMap H = induced_holonomy_map(field, u);
  ReconstructionResult rec = reconstruct(H);
  rep.reconstructed = rec.field;
  rep.reconstructed_base = rec.basepoint;

  // Gauge fixing: move each vertex frame by the field's own tree transport.
  SpanningTree tree = H.tree;
  BundleMorphism m;
  m.psi = identity_graph_iso(field.graph);
  m.phi = identity_hom(field.group);
  m.frame.reserve(field.graph->vertices.size());
  for (std::size_t v = 0; v < field.graph->vertices.size(); ++v) {
    ReducedWalk path = tree_path(field.graph, tree, u.vertex, static_cast<int>(v));
    m.frame.push_back(transport(field, path.w, BundlePoint{u.vertex, u.fiber}).fiber);
  }

  EquivalenceCertificate cert;
  cert.iso = make_iso_exact(identity_graph_iso(field.graph),
                            ReducedWalk{Walk::empty_at(field.graph, u.vertex)},
                            identity_hom(field.group), H, H);
  cert.morphism = m;
  cert.residual = morphism_connection_residual(m, rec.field, field);
  CertificateCheck check = verify_certificate(cert, rec.field, rec.basepoint, field, u);
  rep.certificate = cert;
  rep.ok = check.ok;
  rep.residual = std::max(cert.residual, check.residual);
  return rep;
}

}  // namespace hol
