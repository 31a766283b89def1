#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hol/bundle.hpp"
#include "hol/graph.hpp"
#include "hol/group.hpp"

namespace hol {

// A holonomy map on the loops at `base`, presented by its images on the
// chord generators of the deterministic spanning tree. Thin invariance and
// multiplicativity hold by construction: evaluation reduces the loop and
// reads the chord word.
struct HolonomyMap {
  GraphPtr graph;
  int base = 0;
  GroupDescriptor group;
  SpanningTree tree;
  std::vector<int> chords;               // edge indices, name-sorted
  std::vector<ReducedWalk> generators;   // one loop at base per chord
  std::vector<GroupElement> images;
  Subgroup image_group;                  // Phi

  static HolonomyMap make(GraphPtr g, int base, const GroupDescriptor& group,
                          std::vector<GroupElement> images_by_chord);
  static HolonomyMap flat(GraphPtr g, int base, const GroupDescriptor& group);
  int chord_position(int edge) const;  // -1 when edge is not a chord
};

GroupElement evaluate(const HolonomyMap& H, const Walk& loop);
HolonomyMap induced_holonomy_map(const GaugeField& field, const BundlePoint& u);
bool object_equal(const HolonomyMap& a, const HolonomyMap& b);

// Decides H_alpha = H_beta for co-terminal walks into the base: true iff
// evaluate(H, beta . alpha^-1) centralizes the image subgroup. Exact for
// every kind; matrix kinds inherit tolerance semantics.
bool alpha_equivalent(const HolonomyMap& H, const ReducedWalk& alpha, const ReducedWalk& beta);

// Deterministic representative of alpha's equivalence class: the least
// chord word (breadth-first over the image-group Cayley graph) whose value
// lies in the class coset, spliced onto the tree path. Matrix kinds return
// the reduced walk unchanged and rely on the centralizer criterion.
ReducedWalk canonical_alpha(const HolonomyMap& H, const ReducedWalk& alpha);

// Arrow of Hol: requires the commuting diagram
//   phi(H(gamma)) = H'(Psi(alpha^-1 . gamma . alpha)) for every generator.
// Equality of arrows is class equality of alpha (alpha_equivalent).
struct HolIso {
  HolonomyMap dom, cod;
  GraphIso psi;
  ReducedWalk alpha;  // from psi^-1(cod.base) to dom.base, in dom's graph
  GroupHom phi;
};

// Arrow of Hol*: identical data; equality is thin (reduced-walk) equality.
struct HolStarIso {
  HolonomyMap dom, cod;
  GraphIso psi;
  ReducedWalk alpha;
  GroupHom phi;
};

// Validates endpoints and the diagram; throws ValidationError naming a
// witnessing generator on failure. Stores the canonical class
// representative of alpha (finite kinds).
HolIso make_iso(const GraphIso& psi, const ReducedWalk& alpha, const GroupHom& phi,
                const HolonomyMap& H, const HolonomyMap& Hp);
// Same validation; stores exactly the reduced walk (the thin class).
HolStarIso make_star_iso(const GraphIso& psi, const ReducedWalk& alpha, const GroupHom& phi,
                         const HolonomyMap& H, const HolonomyMap& Hp);
// Validates but stores alpha verbatim. The reconstruction functor reads
// frames off the stored walk, so arrows produced for it must keep the
// representative they were built from.
HolIso make_iso_exact(const GraphIso& psi, const ReducedWalk& alpha, const GroupHom& phi,
                      const HolonomyMap& H, const HolonomyMap& Hp);
bool arrow_valid(const GraphIso& psi, const ReducedWalk& alpha, const GroupHom& phi,
                 const HolonomyMap& H, const HolonomyMap& Hp, std::string* why = nullptr);

HolIso identity_iso(const HolonomyMap& H);
HolIso compose_iso(const HolIso& b, const HolIso& a);
HolIso invert_iso(const HolIso& a);
bool iso_equal(const HolIso& a, const HolIso& b);

HolStarIso identity_star_iso(const HolonomyMap& H);
HolStarIso compose_star_iso(const HolStarIso& b, const HolStarIso& a);
HolStarIso invert_star_iso(const HolStarIso& a);
bool star_iso_equal(const HolStarIso& a, const HolStarIso& b);

// The quotient functor: identity on objects, forgets the thin class down to
// the holonomy-translation class.
HolIso quotient_Q(const HolStarIso& a);

// Executable witness data for the non-splitting of Q on a graph with a
// chord: the Hol composite of the two basepoint-moving arrows collapses to
// the identity while the lifted Hol* composite keeps a nonempty reduced
// curve.
struct QSplitWitness {
  GraphPtr graph;
  GroupDescriptor group;
  ReducedWalk alpha;        // z -> x
  ReducedWalk alpha_prime;  // x -> z
  bool hol_composite_is_identity = false;
  ReducedWalk star_composite_alpha;
  bool star_composite_nonempty = false;
  std::string summary;
};

QSplitWitness q_not_split_witness(const GraphPtr& g, const GroupDescriptor& group);

}  // namespace hol
