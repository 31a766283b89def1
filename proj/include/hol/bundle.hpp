#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hol/graph.hpp"
#include "hol/group.hpp"
#include "hol/report.hpp"

namespace hol {

// Group-valued link variables on a connected graph; the discrete principal
// connection. Reverse traversal of an edge uses the inverse link.
struct GaugeField {
  GraphPtr graph;
  GroupDescriptor group;
  std::vector<GroupElement> links;  // per edge index

  static GaugeField make(GraphPtr g, const GroupDescriptor& group,
                         std::vector<GroupElement> links);
  static GaugeField flat(GraphPtr g, const GroupDescriptor& group);
  const GroupElement& link(int edge) const { return links[static_cast<std::size_t>(edge)]; }
  GroupElement step_value(const EdgeStep& s) const;
};

// Point of the trivialized total space vertices x group; right action acts
// on the fiber component.
struct BundlePoint {
  int vertex = 0;
  GroupElement fiber;
};

BundlePoint right_act(const BundlePoint& p, const GroupElement& g);
bool point_equal(const BundlePoint& a, const BundlePoint& b);

struct GaugeTransformation {
  GroupDescriptor group;
  std::vector<GroupElement> at;  // per vertex

  static GaugeTransformation identity_for(const GaugeField& f);
};

// Parallel transport of p along w: each step multiplies the link value on
// the left of the fiber, so transport commutes with the right action.
BundlePoint transport(const GaugeField& field, const Walk& w, const BundlePoint& p);

// Group element h with transport(loop, u) = u . h (the Wilson loop at u).
GroupElement holonomy(const GaugeField& field, const Walk& loop, const BundlePoint& u);

// U'(e) = t(head) U(e) t(tail)^-1.
GaugeField apply_gauge(const GaugeField& field, const GaugeTransformation& t);

// Bundle isomorphism candidate (psi, phi, frame): acts as
// (v, h) -> (psi(v), frame(v) . phi(h)).
struct BundleMorphism {
  GraphIso psi;
  GroupHom phi;
  std::vector<GroupElement> frame;  // per source vertex, target-group values
};

BundlePoint morphism_apply(const BundleMorphism& m, const BundlePoint& p);
BundleMorphism morphism_inverse(const BundleMorphism& m);
BundleMorphism compose(const BundleMorphism& outer, const BundleMorphism& inner);
bool morphism_equal(const BundleMorphism& a, const BundleMorphism& b);

bool morphism_preserves_connection(const BundleMorphism& m, const GaugeField& src,
                                   const GaugeField& dst);
// Max metric deviation over the per-edge conditions; 0 when exact.
double morphism_connection_residual(const BundleMorphism& m, const GaugeField& src,
                                    const GaugeField& dst);

// Points reachable from the base by horizontal transport, with the holonomy
// group as structure group. Finite kinds enumerate the fibers; matrix kinds
// keep generators plus one representative per vertex.
struct HolonomySubBundle {
  GaugeField field;
  BundlePoint base;
  Subgroup holonomy_group;
  std::vector<BundlePoint> representative;        // per vertex, tree transport of base
  std::vector<std::vector<GroupElement>> fibers;  // per vertex; enumerated kinds only
};

HolonomySubBundle holonomy_subbundle(const GaugeField& field, const BundlePoint& u);
// Membership test: exact fiber lookup for finite kinds, bounded word search
// over the holonomy generators for matrix kinds.
bool subbundle_contains(const HolonomySubBundle& sb, const BundlePoint& p, int word_depth = 16);

using TransportFn =
    std::function<BundlePoint(const GaugeField&, const Walk&, const BundlePoint&)>;

// Randomized check of the four transport laws (composition, return
// equivalence, trivial-holonomy fixpoint, right equivariance). The transport
// function is injectable so fault fixtures can demonstrate detection.
Report check_lemma1(const GaugeField& field, std::uint64_t trials, std::uint64_t seed);
Report check_lemma1_with(const GaugeField& field, std::uint64_t trials, std::uint64_t seed,
                         const TransportFn& fn);

}  // namespace hol
