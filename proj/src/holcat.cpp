#include "hol/holcat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace hol {

HolonomyMap HolonomyMap::make(GraphPtr g, int base, const GroupDescriptor& group,
                              std::vector<GroupElement> images_by_chord) {
  HolonomyMap H;
  H.graph = std::move(g);
  H.base = base;
  H.group = group;
  H.tree = spanning_tree(H.graph, base);
  H.chords = chord_edges(H.graph, H.tree);
  H.generators = chord_generators(H.graph, H.tree, base);
  if (images_by_chord.size() != H.chords.size())
    throw ValidationError("holonomy map: need one image per chord generator (" +
                          std::to_string(H.chords.size()) + " chords)");
  for (const auto& im : images_by_chord)
    if (im.desc != group) throw ValidationError("holonomy map: image not in structure group");
  H.images = std::move(images_by_chord);
  H.image_group = subgroup_generated(group, H.images);
  return H;
}

HolonomyMap HolonomyMap::flat(GraphPtr g, int base, const GroupDescriptor& group) {
  SpanningTree t = spanning_tree(g, base);
  std::vector<GroupElement> images(chord_edges(g, t).size(), identity(group));
  return make(std::move(g), base, group, std::move(images));
}

int HolonomyMap::chord_position(int edge) const {
  auto it = std::lower_bound(chords.begin(), chords.end(), edge, [this](int a, int b) {
    return graph->edges[static_cast<std::size_t>(a)].name < graph->edges[static_cast<std::size_t>(b)].name;
  });
  if (it == chords.end() || *it != edge) return -1;
  return static_cast<int>(it - chords.begin());
}

GroupElement evaluate(const HolonomyMap& H, const Walk& loop) {
  if (!loop.closed() || loop.start != H.base)
    throw PreconditionError("evaluate: loop not based at " +
                            H.graph->vertices[static_cast<std::size_t>(H.base)]);
  ReducedWalk r = reduce(loop);
  std::vector<int> word = loop_decompose(r, H.graph, H.chords, H.base);
  GroupElement acc = identity(H.group);
  for (int letter : word) {
    const GroupElement& im = H.images[static_cast<std::size_t>(std::abs(letter) - 1)];
    acc = multiply(letter > 0 ? im : inverse(im), acc);  // later letters on the left
  }
  return acc;
}

HolonomyMap induced_holonomy_map(const GaugeField& field, const BundlePoint& u) {
  SpanningTree t = spanning_tree(field.graph, u.vertex);
  std::vector<GroupElement> images;
  for (const auto& gen : chord_generators(field.graph, t, u.vertex))
    images.push_back(holonomy(field, gen.w, u));
  return HolonomyMap::make(field.graph, u.vertex, field.group, std::move(images));
}

bool object_equal(const HolonomyMap& a, const HolonomyMap& b) {
  if (!a.graph->same_structure(*b.graph)) return false;
  if (a.base != b.base || a.group != b.group) return false;
  for (std::size_t i = 0; i < a.images.size(); ++i)
    if (!equal(a.images[i], b.images[i])) return false;
  return true;
}

bool alpha_equivalent(const HolonomyMap& H, const ReducedWalk& alpha, const ReducedWalk& beta) {
  if (alpha.start() != beta.start() || alpha.end() != beta.end())
    throw PreconditionError("alpha_equivalent: walks are not co-terminal");
  if (alpha.end() != H.base)
    throw PreconditionError("alpha_equivalent: walks must end at the base point");
  GroupElement c = evaluate(H, compose(beta.w, invert(alpha.w)));
  return centralizes(c, H.image_group.generators);
}

namespace {

// Breadth-first search over the image-group Cayley graph for the least
// reduced chord word whose value lies in `targets`. Letters are ordered
// chord-by-chord, forward before reverse.
std::optional<std::vector<int>> least_word_with_value(const HolonomyMap& H,
                                                      const std::set<std::uint64_t>& targets) {
  struct Node {
    GroupElement value;
    std::vector<int> word;
  };
  std::set<std::uint64_t> seen;
  std::deque<Node> queue;
  GroupElement e = identity(H.group);
  if (targets.count(element_key(e))) return std::vector<int>{};
  seen.insert(element_key(e));
  queue.push_back({e, {}});
  std::vector<int> letters;
  for (std::size_t i = 0; i < H.images.size(); ++i) {
    letters.push_back(static_cast<int>(i) + 1);
    letters.push_back(-(static_cast<int>(i) + 1));
  }
  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    for (int letter : letters) {
      if (!cur.word.empty() && cur.word.back() == -letter) continue;  // keep words reduced
      const GroupElement& im = H.images[static_cast<std::size_t>(std::abs(letter) - 1)];
      GroupElement value = multiply(letter > 0 ? im : inverse(im), cur.value);
      std::uint64_t key = element_key(value);
      std::vector<int> word = cur.word;
      word.push_back(letter);
      if (targets.count(key)) return word;
      if (seen.insert(key).second) queue.push_back({value, std::move(word)});
    }
  }
  return std::nullopt;
}

}  // namespace

ReducedWalk canonical_alpha(const HolonomyMap& H, const ReducedWalk& alpha) {
  if (alpha.end() != H.base)
    throw PreconditionError("canonical_alpha: walk must end at the base point");
  if (!H.group.finite()) return alpha;

  ReducedWalk tau = tree_path(H.graph, H.tree, alpha.start(), H.base);
  GroupElement t = evaluate(H, compose(alpha.w, invert(tau.w)));

  // Class coset: (Z(Phi) n Phi) . t
  std::set<std::uint64_t> targets;
  for (const auto& z : H.image_group.elements)
    if (centralizes(z, H.image_group.generators)) targets.insert(element_key(multiply(z, t)));

  auto word = least_word_with_value(H, targets);
  if (!word) throw Error("canonical_alpha: class value unreachable in image group (bug)");
  return reduce(compose(expand_word(*word, H.generators, H.graph, H.base), tau.w));
}

namespace {

void validate_arrow(const GraphIso& psi, const ReducedWalk& alpha, const GroupHom& phi,
                    const HolonomyMap& H, const HolonomyMap& Hp, const char* what) {
  if (!psi.src->same_structure(*H.graph) || !psi.dst->same_structure(*Hp.graph))
    throw ValidationError(std::string(what) + ": psi does not map the domain graph to the codomain graph");
  if (!is_graph_iso(psi)) throw ValidationError(std::string(what) + ": psi is not a graph isomorphism");
  if (phi.source != H.group || phi.target != Hp.group)
    throw ValidationError(std::string(what) + ": phi does not map the structure groups");
  if (!phi.iso_flag) throw ValidationError(std::string(what) + ": phi is not an isomorphism");
  int expected_start = psi.inverse().v(Hp.base);
  if (alpha.start() != expected_start || alpha.end() != H.base)
    throw ValidationError(std::string(what) + ": alpha endpoints violate the definition (needs " +
                          H.graph->vertices[static_cast<std::size_t>(expected_start)] + " -> " +
                          H.graph->vertices[static_cast<std::size_t>(H.base)] + ")");
  for (std::size_t i = 0; i < H.generators.size(); ++i) {
    GroupElement lhs = phi.apply(H.images[i]);
    Walk conj = compose(invert(alpha.w), compose(H.generators[i].w, alpha.w));
    GroupElement rhs = evaluate(Hp, psi.apply(reduce(conj).w));
    if (!equal(lhs, rhs))
      throw ValidationError(std::string(what) + ": diagram fails on generator " +
                            H.graph->edges[static_cast<std::size_t>(H.chords[i])].name + " (phi(H(gamma)) = " +
                            lhs.str() + ", H'(psi(alpha^-1.gamma.alpha)) = " + rhs.str() + ")");
  }
}

}  // namespace

HolIso make_iso(const GraphIso& psi, const ReducedWalk& alpha, const GroupHom& phi,
                const HolonomyMap& H, const HolonomyMap& Hp) {
  validate_arrow(psi, alpha, phi, H, Hp, "make_iso");
  return {H, Hp, psi, canonical_alpha(H, alpha), phi};
}

HolStarIso make_star_iso(const GraphIso& psi, const ReducedWalk& alpha, const GroupHom& phi,
                         const HolonomyMap& H, const HolonomyMap& Hp) {
  validate_arrow(psi, alpha, phi, H, Hp, "make_star_iso");
  return {H, Hp, psi, alpha, phi};
}

HolIso make_iso_exact(const GraphIso& psi, const ReducedWalk& alpha, const GroupHom& phi,
                      const HolonomyMap& H, const HolonomyMap& Hp) {
  validate_arrow(psi, alpha, phi, H, Hp, "make_iso_exact");
  return {H, Hp, psi, alpha, phi};
}

bool arrow_valid(const GraphIso& psi, const ReducedWalk& alpha, const GroupHom& phi,
                 const HolonomyMap& H, const HolonomyMap& Hp, std::string* why) {
  try {
    validate_arrow(psi, alpha, phi, H, Hp, "arrow_valid");
    return true;
  } catch (const Error& e) {
    if (why) *why = e.what();
    return false;
  }
}

HolIso identity_iso(const HolonomyMap& H) {
  return {H, H, identity_graph_iso(H.graph), ReducedWalk{Walk::empty_at(H.graph, H.base)},
          identity_hom(H.group)};
}

HolStarIso identity_star_iso(const HolonomyMap& H) {
  return {H, H, identity_graph_iso(H.graph), ReducedWalk{Walk::empty_at(H.graph, H.base)},
          identity_hom(H.group)};
}

namespace {

// Composition stores the representative produced by the composition
// formula, not a re-canonicalized one: the reconstruction functor computes
// frames from the stored walk, and the formula keeps those composable.
template <typename Arrow>
Arrow compose_arrows(const Arrow& b, const Arrow& a, const char* what) {
  if (!object_equal(a.cod, b.dom))
    throw PreconditionError(std::string(what) + ": codomain of first factor differs from domain of second");
  ReducedWalk alpha = reduce(compose(a.alpha.w, a.psi.inverse().apply(b.alpha.w)));
  GraphIso psi = compose(b.psi, a.psi);
  GroupHom phi = compose_hom(b.phi, a.phi);
  validate_arrow(psi, alpha, phi, a.dom, b.cod, what);
  return {a.dom, b.cod, psi, alpha, phi};
}

template <typename Arrow>
Arrow invert_arrow(const Arrow& a, const char* what) {
  GraphIso psi = a.psi.inverse();
  ReducedWalk alpha = reduce(invert(a.psi.apply(a.alpha.w)));
  GroupHom phi = inverse_hom(a.phi);
  validate_arrow(psi, alpha, phi, a.cod, a.dom, what);
  return {a.cod, a.dom, psi, alpha, phi};
}

}  // namespace

HolIso compose_iso(const HolIso& b, const HolIso& a) { return compose_arrows(b, a, "compose_iso"); }
HolIso invert_iso(const HolIso& a) { return invert_arrow(a, "invert_iso"); }

HolStarIso compose_star_iso(const HolStarIso& b, const HolStarIso& a) {
  return compose_arrows(b, a, "compose_star_iso");
}
HolStarIso invert_star_iso(const HolStarIso& a) { return invert_arrow(a, "invert_star_iso"); }

bool iso_equal(const HolIso& a, const HolIso& b) {
  if (!object_equal(a.dom, b.dom) || !object_equal(a.cod, b.cod)) return false;
  if (!graph_iso_equal(a.psi, b.psi) || !hom_equal(a.phi, b.phi)) return false;
  return alpha_equivalent(a.dom, a.alpha, b.alpha);
}

bool star_iso_equal(const HolStarIso& a, const HolStarIso& b) {
  if (!object_equal(a.dom, b.dom) || !object_equal(a.cod, b.cod)) return false;
  if (!graph_iso_equal(a.psi, b.psi) || !hom_equal(a.phi, b.phi)) return false;
  return reduced_equal(a.alpha, b.alpha);
}

HolIso quotient_Q(const HolStarIso& a) { return {a.dom, a.cod, a.psi, a.alpha, a.phi}; }

QSplitWitness q_not_split_witness(const GraphPtr& g, const GroupDescriptor& group) {
  SpanningTree t = spanning_tree(g, 0);
  std::vector<int> chords = chord_edges(g, t);
  if (chords.empty())
    throw PreconditionError(
        "q_not_split_witness: unsuitable graph (simply connected: all co-terminal reduced paths "
        "are equal)");

  int x = 0;
  int e = chords.front();
  const Graph::Edge& ed = g->edges[static_cast<std::size_t>(e)];

  // alpha: z -> x through the chord; alpha': x -> z through the tree. Their
  // composite is the chord generator loop, which is reduced and nonempty, so
  // alpha and (alpha')^-1 are not thinly equivalent.
  ReducedWalk back = tree_path(g, t, ed.head, x);
  ReducedWalk alpha = reduce(compose(back.w, Walk::make(g, ed.tail, {EdgeStep{e, true}})));
  ReducedWalk alpha_prime = tree_path(g, t, x, ed.tail);
  int z = ed.tail;

  HolonomyMap Hx = HolonomyMap::flat(g, x, group);
  HolonomyMap Hz = HolonomyMap::flat(g, z, group);

  HolIso a = make_iso(identity_graph_iso(g), alpha, identity_hom(group), Hx, Hz);
  HolIso b = make_iso(identity_graph_iso(g), alpha_prime, identity_hom(group), Hz, Hx);
  HolIso hol_composite = compose_iso(b, a);

  HolStarIso sa = make_star_iso(identity_graph_iso(g), alpha, identity_hom(group), Hx, Hz);
  HolStarIso sb = make_star_iso(identity_graph_iso(g), alpha_prime, identity_hom(group), Hz, Hx);
  HolStarIso star_composite = compose_star_iso(sb, sa);

  QSplitWitness w;
  w.graph = g;
  w.group = group;
  w.alpha = alpha;
  w.alpha_prime = alpha_prime;
  w.hol_composite_is_identity = iso_equal(hol_composite, identity_iso(Hx));
  w.star_composite_alpha = star_composite.alpha;
  w.star_composite_nonempty =
      !star_iso_equal(star_composite, identity_star_iso(Hx)) && !star_composite.alpha.is_empty();
  std::ostringstream os;
  os << "hol composite " << (w.hol_composite_is_identity ? "equals" : "differs from")
     << " the identity arrow; star composite carries alpha \"" << w.star_composite_alpha.w.str()
     << "\" (" << w.star_composite_alpha.w.length() << " steps), " << (w.star_composite_nonempty ? "not" : "")
     << " the star identity";
  w.summary = os.str();
  return w;
}

}  // namespace hol
