#pragma once

#include <string>

#include <json.hpp>

#include "hol/bundle.hpp"
#include "hol/holcat.hpp"
#include "hol/reconstruct.hpp"
#include "hol/smooth.hpp"

namespace hol {

using Json = nlohmann::json;

// Every reader rejects unknown fields and names the missing field and its
// JSON context on error.

Json descriptor_to_json(const GroupDescriptor& d);
GroupDescriptor descriptor_from_json(const Json& j);

Json element_to_json(const GroupElement& g);
GroupElement element_from_json(const Json& j, const GroupDescriptor& d);

Json graph_to_json(const Graph& g);
GraphPtr graph_from_json(const Json& j);

Json field_to_json(const GaugeField& f);
GaugeField field_from_json(const Json& j);

Json map_to_json(const HolonomyMap& H);
HolonomyMap map_from_json(const Json& j);

Json hom_to_json(const GroupHom& h);
GroupHom hom_from_json(const Json& j);

Json graph_iso_to_json(const GraphIso& iso);
GraphIso graph_iso_from_json(const Json& j, const GraphPtr& src, const GraphPtr& dst);

Json iso_to_json(const HolIso& iso);
HolIso iso_from_json(const Json& j);

Json morphism_to_json(const BundleMorphism& m, const GraphPtr& src);
BundleMorphism morphism_from_json(const Json& j, const GraphPtr& src, const GraphPtr& dst,
                                  const GroupDescriptor& src_group,
                                  const GroupDescriptor& dst_group);

// Self-contained certificate file: both fields, both base points, the
// holonomy isomorphism, and the bundle morphism.
struct CertificateFile {
  GaugeField src;
  BundlePoint src_base;
  GaugeField dst;
  BundlePoint dst_base;
  EquivalenceCertificate cert;
};

Json certificate_to_json(const CertificateFile& c);
CertificateFile certificate_from_json(const Json& j);

Json potential_to_json(const GaugePotential& A);
GaugePotential potential_from_json(const Json& j);

Json curve_to_json(const PiecewiseSmoothCurve& c);
PiecewiseSmoothCurve curve_from_json(const Json& j);

// Walk literal "x: a b~ c"; the suffix "~" or a trailing superscript minus
// one marks reverse traversal.
Walk parse_walk_literal(const std::string& text, const GraphPtr& g);
// Base point literal "vertex:element", where element is "e" for the
// identity or a JSON element encoding.
BundlePoint parse_base_literal(const std::string& text, const GroupDescriptor& d,
                               const GraphPtr& g);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace hol
