#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hol/bundle.hpp"
#include "hol/holcat.hpp"

namespace hol {

// Spanning-tree gauge realization of the reconstruction: tree links carry
// the identity, each chord carries its generator image, and the base point
// sits at the identity fiber. The induced map of the result equals the
// input exactly.
struct ReconstructionResult {
  GaugeField field;
  BundlePoint basepoint;
};

ReconstructionResult reconstruct(const HolonomyMap& H);

// The arrow action of the functor: builds the bundle isomorphism determined
// by a holonomy isomorphism between the induced maps of (src, u) and
// (dst, u'). Throws when the induced maps do not match the arrow.
BundleMorphism functor_on_arrow(const HolIso& a, const GaugeField& src, const BundlePoint& u,
                                const GaugeField& dst, const BundlePoint& u_prime);

struct ExtractResult {
  HolIso iso;
  bool adjusted = false;       // conjugation fallback was needed
  GroupElement defect;         // frame defect when adjusted
};

// Inverse direction of the arrow action: reads a holonomy isomorphism off a
// connection-preserving morphism. Prefers a curve whose lift lands exactly
// on the base point (found by word search in the holonomy group); when no
// such curve exists the tree path is kept and phi is corrected by an inner
// conjugation, which restores the diagram but may not recover m under the
// functor. Adjusted cases are flagged for the caller to log.
ExtractResult extract_hol_iso(const BundleMorphism& m, const GaugeField& src,
                              const BundlePoint& u, const GaugeField& dst,
                              const BundlePoint& u_prime);

struct EquivalenceCertificate {
  HolIso iso;
  BundleMorphism morphism;
  double residual = 0.0;
};

// Independent re-check of a certificate against the named fields: diagram,
// per-edge connection condition, and the base point condition
// F(transport(alpha^-1, u)) = u'.
struct CertificateCheck {
  bool ok = false;
  double residual = 0.0;
  std::string detail;
};
CertificateCheck verify_certificate(const EquivalenceCertificate& cert, const GaugeField& src,
                                    const BundlePoint& u, const GaugeField& dst,
                                    const BundlePoint& u_prime);

struct GaugeEquivalenceOptions {
  std::size_t max_vertices = 10;
  std::uint64_t max_group_order = 64;
  int matrix_word_depth = 16;
  std::size_t matrix_state_cap = 20000;
  std::optional<std::vector<GraphIso>> psi_candidates;
  std::optional<std::vector<GroupHom>> phi_candidates;
};

struct RefutationWitness {
  std::string loop;            // walk literal in the source graph
  int src_order = 0;
  std::vector<int> dst_orders; // per psi candidate
};

struct GaugeEquivalenceResult {
  enum class Status { Equivalent, Refuted, Inconclusive };
  Status status = Status::Inconclusive;
  std::optional<EquivalenceCertificate> certificate;
  std::optional<RefutationWitness> witness;
  std::string detail;
};

// Decision procedure for Theorem 1: complete search over graph isomorphisms,
// group isomorphisms, and basepoint-moving curves for finite kinds; bounded
// word search over supplied candidates for matrix kinds (inconclusive on
// exhaustion, never refuted).
GaugeEquivalenceResult gauge_equivalent(const GaugeField& src, const BundlePoint& u,
                                        const GaugeField& dst, const BundlePoint& u_prime,
                                        const GaugeEquivalenceOptions& opts = {});

// Map-level search backing gauge_equivalent and `hol iso-find` on map files.
struct HolIsoSearchResult {
  GaugeEquivalenceResult::Status status = GaugeEquivalenceResult::Status::Inconclusive;
  std::optional<HolIso> iso;
  std::optional<RefutationWitness> witness;
  std::string detail;
};
HolIsoSearchResult find_hol_iso(const HolonomyMap& H, const HolonomyMap& Hp,
                                const GaugeEquivalenceOptions& opts = {});

struct FunctorCheckReport {
  bool ok = true;
  std::string detail;
};

// C(a) = C(a') must force a = a'.
FunctorCheckReport faithfulness_check(const HolIso& a, const HolIso& a_prime);

// reconstruct(induced map) is certified gauge-isomorphic to the field via
// the spanning-tree gauge fixing.
struct EssentialSurjectivityReport {
  EquivalenceCertificate certificate;
  GaugeField reconstructed;
  BundlePoint reconstructed_base;
  bool ok = false;
  double residual = 0.0;
};
EssentialSurjectivityReport essential_surjectivity_check(const GaugeField& field,
                                                         const BundlePoint& u);

}  // namespace hol
