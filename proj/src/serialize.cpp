#include "hol/serialize.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace hol {

namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ParseError(where + ": unknown field \"" + key + "\"");
}

const Json& field_at(const Json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

}  // namespace

Json descriptor_to_json(const GroupDescriptor& d) {
  Json j;
  switch (d.kind) {
    case GroupKind::Cyclic: j = {{"kind", "cyclic"}, {"n", d.n}}; break;
    case GroupKind::Symmetric: j = {{"kind", "symmetric"}, {"n", d.n}}; break;
    case GroupKind::Dihedral: j = {{"kind", "dihedral"}, {"n", d.n}}; break;
    case GroupKind::Quaternion8: j = {{"kind", "quaternion8"}}; break;
    case GroupKind::U1: j = {{"kind", "U1"}, {"tol", d.tolerance}}; break;
    case GroupKind::SU2: j = {{"kind", "SU2"}, {"tol", d.tolerance}}; break;
  }
  return j;
}

GroupDescriptor descriptor_from_json(const Json& j) {
  check_keys(j, {"kind", "n", "tol"}, "group");
  std::string kind = field_at(j, "kind", "group").get<std::string>();
  bool matrix = kind == "U1" || kind == "SU2";
  if (!matrix && j.value("tol", 0.0) != 0.0)
    throw ParseError("group: finite kinds carry tolerance exactly 0");
  if (kind == "cyclic") return GroupDescriptor::cyclic(field_at(j, "n", "group").get<int>());
  if (kind == "symmetric") return GroupDescriptor::symmetric(field_at(j, "n", "group").get<int>());
  if (kind == "dihedral") return GroupDescriptor::dihedral(field_at(j, "n", "group").get<int>());
  if (kind == "quaternion8") return GroupDescriptor::quaternion8();
  if (kind == "U1") return GroupDescriptor::u1(j.value("tol", 1e-9));
  if (kind == "SU2") return GroupDescriptor::su2(j.value("tol", 1e-9));
  throw ParseError("group: unknown kind \"" + kind + "\"");
}

Json element_to_json(const GroupElement& g) {
  switch (g.desc.kind) {
    case GroupKind::Cyclic: return std::get<int>(g.payload);
    case GroupKind::Symmetric: return std::get<std::vector<int>>(g.payload);
    case GroupKind::Dihedral: {
      const auto& d = std::get<DihedralPayload>(g.payload);
      return d.reflection ? Json{{"ref", d.k}} : Json{{"rot", d.k}};
    }
    case GroupKind::Quaternion8: {
      static const char* names[8] = {"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
      return names[std::get<std::uint8_t>(g.payload)];
    }
    case GroupKind::U1: return std::get<double>(g.payload);
    case GroupKind::SU2: {
      const Quat& q = std::get<Quat>(g.payload);
      return Json::array({q.w, q.x, q.y, q.z});
    }
  }
  throw Error("unreachable");
}

GroupElement element_from_json(const Json& j, const GroupDescriptor& d) {
  switch (d.kind) {
    case GroupKind::Cyclic: {
      if (!j.is_number_integer()) throw ParseError("element: cyclic payload must be an integer");
      int v = j.get<int>();
      if (v < 0 || v >= d.n) throw ParseError("element: cyclic residue out of range");
      return {d, v};
    }
    case GroupKind::Symmetric: {
      if (!j.is_array()) throw ParseError("element: symmetric payload must be a permutation array");
      std::vector<int> p = j.get<std::vector<int>>();
      if (static_cast<int>(p.size()) != d.n)
        throw ParseError("element: permutation length differs from n");
      std::vector<char> seen(p.size(), 0);
      for (int v : p) {
        if (v < 0 || v >= d.n || seen[static_cast<std::size_t>(v)])
          throw ParseError("element: not a permutation of 0..n-1");
        seen[static_cast<std::size_t>(v)] = 1;
      }
      return {d, std::move(p)};
    }
    case GroupKind::Dihedral: {
      check_keys(j, {"rot", "ref"}, "element");
      if (j.contains("rot") == j.contains("ref"))
        throw ParseError("element: dihedral payload needs exactly one of \"rot\"/\"ref\"");
      bool ref = j.contains("ref");
      int k = (ref ? j["ref"] : j["rot"]).get<int>();
      if (k < 0 || k >= d.n) throw ParseError("element: dihedral index out of range");
      return {d, DihedralPayload{ref, k}};
    }
    case GroupKind::Quaternion8: {
      if (!j.is_string()) throw ParseError("element: quaternion8 payload must be a label string");
      static const char* names[8] = {"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
      std::string s = j.get<std::string>();
      for (int i = 0; i < 8; ++i)
        if (s == names[i]) return {d, static_cast<std::uint8_t>(i)};
      throw ParseError("element: unknown quaternion8 label \"" + s + "\"");
    }
    case GroupKind::U1: {
      if (!j.is_number()) throw ParseError("element: U1 payload must be an angle");
      double a = j.get<double>();
      GroupElement g{d, 0.0};
      g.payload = a;
      return multiply(g, identity(d));  // normalizes the angle
    }
    case GroupKind::SU2: {
      if (!j.is_array() || j.size() != 4)
        throw ParseError("element: SU2 payload must be a 4-vector");
      Quat q{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
      if (std::abs(q.norm() - 1.0) > d.tolerance * 1000 + 1e-6)
        throw ParseError("element: SU2 payload is not a unit quaternion");
      return {d, q.normalized()};
    }
  }
  throw Error("unreachable");
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"name", e.name},
                     {"tail", g.vertices[static_cast<std::size_t>(e.tail)]},
                     {"head", g.vertices[static_cast<std::size_t>(e.head)]}});
  return {{"vertices", g.vertices}, {"edges", edges}};
}

GraphPtr graph_from_json(const Json& j) {
  check_keys(j, {"vertices", "edges"}, "graph");
  std::vector<std::string> vertices =
      field_at(j, "vertices", "graph").get<std::vector<std::string>>();
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& e : field_at(j, "edges", "graph")) {
    check_keys(e, {"name", "tail", "head"}, "graph.edges");
    edges.emplace_back(field_at(e, "name", "edge").get<std::string>(),
                       field_at(e, "tail", "edge").get<std::string>(),
                       field_at(e, "head", "edge").get<std::string>());
  }
  return Graph::make(vertices, edges);
}

Json field_to_json(const GaugeField& f) {
  Json links = Json::object();
  for (std::size_t i = 0; i < f.links.size(); ++i)
    links[f.graph->edges[i].name] = element_to_json(f.links[i]);
  return {{"graph", graph_to_json(*f.graph)},
          {"group", descriptor_to_json(f.group)},
          {"links", links}};
}

GaugeField field_from_json(const Json& j) {
  check_keys(j, {"graph", "group", "links"}, "field");
  GraphPtr g = graph_from_json(field_at(j, "graph", "field"));
  GroupDescriptor d = descriptor_from_json(field_at(j, "group", "field"));
  const Json& links = field_at(j, "links", "field");
  std::vector<GroupElement> values(g->edges.size(), identity(d));
  std::set<std::string> known;
  for (const auto& e : g->edges) known.insert(e.name);
  for (const auto& [name, value] : links.items()) {
    if (!known.count(name)) throw ParseError("field.links: unknown edge \"" + name + "\"");
    values[static_cast<std::size_t>(g->edge(name))] = element_from_json(value, d);
  }
  for (const auto& e : g->edges)
    if (!links.contains(e.name))
      throw ParseError("field.links: missing link for edge \"" + e.name + "\"");
  return GaugeField::make(g, d, std::move(values));
}

Json map_to_json(const HolonomyMap& H) {
  Json tree = Json::array();
  for (std::size_t i = 0; i < H.graph->edges.size(); ++i)
    if (H.tree.in_tree[i]) tree.push_back(H.graph->edges[i].name);
  Json images = Json::object();
  for (std::size_t i = 0; i < H.chords.size(); ++i)
    images[H.graph->edges[static_cast<std::size_t>(H.chords[i])].name] =
        element_to_json(H.images[i]);
  return {{"graph", graph_to_json(*H.graph)},
          {"base", H.graph->vertices[static_cast<std::size_t>(H.base)]},
          {"group", descriptor_to_json(H.group)},
          {"tree", tree},
          {"images", images}};
}

HolonomyMap map_from_json(const Json& j) {
  check_keys(j, {"graph", "base", "group", "tree", "images"}, "holonomy map");
  GraphPtr g = graph_from_json(field_at(j, "graph", "holonomy map"));
  int base = g->vertex(field_at(j, "base", "holonomy map").get<std::string>());
  GroupDescriptor d = descriptor_from_json(field_at(j, "group", "holonomy map"));
  SpanningTree tree = spanning_tree(g, base);
  std::vector<int> chords = chord_edges(g, tree);
  // The stored tree is informative; verify it matches the deterministic one.
  if (j.contains("tree")) {
    std::set<std::string> claimed;
    for (const auto& name : j["tree"]) claimed.insert(name.get<std::string>());
    std::set<std::string> actual;
    for (std::size_t i = 0; i < g->edges.size(); ++i)
      if (tree.in_tree[i]) actual.insert(g->edges[i].name);
    if (claimed != actual)
      throw ParseError("holonomy map: stored tree differs from the deterministic spanning tree");
  }
  const Json& images = field_at(j, "images", "holonomy map");
  std::set<std::string> chord_names;
  for (int c : chords) chord_names.insert(g->edges[static_cast<std::size_t>(c)].name);
  for (const auto& [name, value] : images.items())
    if (!chord_names.count(name))
      throw ParseError("holonomy map: \"" + name + "\" is not a chord of the spanning tree");
  std::vector<GroupElement> values;
  for (int c : chords) {
    const std::string& name = g->edges[static_cast<std::size_t>(c)].name;
    if (!images.contains(name))
      throw ParseError("holonomy map: missing image for chord \"" + name + "\"");
    values.push_back(element_from_json(images[name], d));
  }
  return HolonomyMap::make(g, base, d, std::move(values));
}

Json hom_to_json(const GroupHom& h) {
  Json j{{"source", descriptor_to_json(h.source)}, {"target", descriptor_to_json(h.target)}};
  switch (h.rule) {
    case GroupHom::Rule::Identity: j["rule"] = "identity"; break;
    case GroupHom::Rule::U1Conjugate: j["rule"] = "u1_conjugate"; break;
    case GroupHom::Rule::SU2Conjugation:
      j["rule"] = "su2_conjugation";
      j["q"] = Json::array({h.conj_by.w, h.conj_by.x, h.conj_by.y, h.conj_by.z});
      break;
    case GroupHom::Rule::Table: {
      j["rule"] = "generator_images";
      Json images = Json::array();
      for (const auto& gen : canonical_generators(h.source))
        images.push_back(element_to_json(h.apply(gen)));
      j["images"] = images;
      break;
    }
  }
  return j;
}

GroupHom hom_from_json(const Json& j) {
  check_keys(j, {"source", "target", "rule", "q", "images"}, "hom");
  GroupDescriptor src = descriptor_from_json(field_at(j, "source", "hom"));
  GroupDescriptor dst = descriptor_from_json(field_at(j, "target", "hom"));
  std::string rule = field_at(j, "rule", "hom").get<std::string>();
  if (rule == "identity") {
    if (src != dst) throw ParseError("hom: identity rule needs equal groups");
    return identity_hom(src);
  }
  if (rule == "u1_conjugate") {
    if (src.kind != GroupKind::U1 || dst.kind != GroupKind::U1)
      throw ParseError("hom: u1_conjugate rule needs U1 groups");
    return u1_conjugation_hom(src.tolerance);
  }
  if (rule == "su2_conjugation") {
    if (src.kind != GroupKind::SU2 || dst.kind != GroupKind::SU2)
      throw ParseError("hom: su2_conjugation rule needs SU2 groups");
    const Json& q = field_at(j, "q", "hom");
    if (!q.is_array() || q.size() != 4) throw ParseError("hom: q must be a 4-vector");
    return su2_conjugation_hom(
        Quat{q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>()},
        src.tolerance);
  }
  if (rule == "generator_images") {
    std::vector<GroupElement> images;
    for (const auto& im : field_at(j, "images", "hom")) images.push_back(element_from_json(im, dst));
    auto h = hom_from_generator_images(src, dst, images);
    if (!h) throw ParseError("hom: generator images violate the source relations");
    return *h;
  }
  throw ParseError("hom: unknown rule \"" + rule + "\"");
}

Json graph_iso_to_json(const GraphIso& iso) {
  Json vm = Json::object(), em = Json::object();
  for (std::size_t i = 0; i < iso.vmap.size(); ++i)
    vm[iso.src->vertices[i]] = iso.dst->vertices[static_cast<std::size_t>(iso.vmap[i])];
  for (std::size_t i = 0; i < iso.emap.size(); ++i)
    em[iso.src->edges[i].name] = iso.dst->edges[static_cast<std::size_t>(iso.emap[i])].name;
  return {{"vertices", vm}, {"edges", em}};
}

GraphIso graph_iso_from_json(const Json& j, const GraphPtr& src, const GraphPtr& dst) {
  check_keys(j, {"vertices", "edges"}, "graph iso");
  GraphIso iso;
  iso.src = src;
  iso.dst = dst;
  iso.vmap.assign(src->vertices.size(), -1);
  iso.emap.assign(src->edges.size(), -1);
  for (const auto& [from, to] : field_at(j, "vertices", "graph iso").items())
    iso.vmap[static_cast<std::size_t>(src->vertex(from))] = dst->vertex(to.get<std::string>());
  for (const auto& [from, to] : field_at(j, "edges", "graph iso").items())
    iso.emap[static_cast<std::size_t>(src->edge(from))] = dst->edge(to.get<std::string>());
  for (int v : iso.vmap)
    if (v < 0) throw ParseError("graph iso: vertex map is not total");
  for (int e : iso.emap)
    if (e < 0) throw ParseError("graph iso: edge map is not total");
  if (!is_graph_iso(iso)) throw ParseError("graph iso: maps do not preserve incidence");
  return iso;
}

Json iso_to_json(const HolIso& iso) {
  return {{"dom", map_to_json(iso.dom)},
          {"cod", map_to_json(iso.cod)},
          {"psi", graph_iso_to_json(iso.psi)},
          {"alpha", iso.alpha.w.str()},
          {"phi", hom_to_json(iso.phi)}};
}

HolIso iso_from_json(const Json& j) {
  check_keys(j, {"dom", "cod", "psi", "alpha", "phi"}, "holonomy iso");
  HolonomyMap dom = map_from_json(field_at(j, "dom", "holonomy iso"));
  HolonomyMap cod = map_from_json(field_at(j, "cod", "holonomy iso"));
  GraphIso psi = graph_iso_from_json(field_at(j, "psi", "holonomy iso"), dom.graph, cod.graph);
  Walk alpha = parse_walk_literal(field_at(j, "alpha", "holonomy iso").get<std::string>(), dom.graph);
  GroupHom phi = hom_from_json(field_at(j, "phi", "holonomy iso"));
  return make_iso_exact(psi, reduce(alpha), phi, dom, cod);
}

Json morphism_to_json(const BundleMorphism& m, const GraphPtr& src) {
  Json frame = Json::object();
  for (std::size_t v = 0; v < m.frame.size(); ++v)
    frame[src->vertices[v]] = element_to_json(m.frame[v]);
  return {{"psi", graph_iso_to_json(m.psi)}, {"phi", hom_to_json(m.phi)}, {"frame", frame}};
}

BundleMorphism morphism_from_json(const Json& j, const GraphPtr& src, const GraphPtr& dst,
                                  const GroupDescriptor& src_group,
                                  const GroupDescriptor& dst_group) {
  check_keys(j, {"psi", "phi", "frame"}, "morphism");
  BundleMorphism m;
  m.psi = graph_iso_from_json(field_at(j, "psi", "morphism"), src, dst);
  m.phi = hom_from_json(field_at(j, "phi", "morphism"));
  if (m.phi.source != src_group || m.phi.target != dst_group)
    throw ParseError("morphism: phi groups do not match the fields");
  m.frame.assign(src->vertices.size(), identity(dst_group));
  const Json& frame = field_at(j, "frame", "morphism");
  for (const auto& [name, value] : frame.items())
    m.frame[static_cast<std::size_t>(src->vertex(name))] = element_from_json(value, dst_group);
  for (const auto& v : src->vertices)
    if (!frame.contains(v)) throw ParseError("morphism.frame: missing vertex \"" + v + "\"");
  return m;
}

Json certificate_to_json(const CertificateFile& c) {
  return {{"src_field", field_to_json(c.src)},
          {"src_base",
           c.src.graph->vertices[static_cast<std::size_t>(c.src_base.vertex)] + ":" +
               element_to_json(c.src_base.fiber).dump()},
          {"dst_field", field_to_json(c.dst)},
          {"dst_base",
           c.dst.graph->vertices[static_cast<std::size_t>(c.dst_base.vertex)] + ":" +
               element_to_json(c.dst_base.fiber).dump()},
          {"iso", iso_to_json(c.cert.iso)},
          {"morphism", morphism_to_json(c.cert.morphism, c.src.graph)},
          {"residual", c.cert.residual}};
}

CertificateFile certificate_from_json(const Json& j) {
  check_keys(j, {"src_field", "src_base", "dst_field", "dst_base", "iso", "morphism", "residual"},
             "certificate");
  CertificateFile c{GaugeField{}, BundlePoint{}, GaugeField{}, BundlePoint{},
                    EquivalenceCertificate{}};
  c.src = field_from_json(field_at(j, "src_field", "certificate"));
  c.dst = field_from_json(field_at(j, "dst_field", "certificate"));
  c.src_base = parse_base_literal(field_at(j, "src_base", "certificate").get<std::string>(),
                                  c.src.group, c.src.graph);
  c.dst_base = parse_base_literal(field_at(j, "dst_base", "certificate").get<std::string>(),
                                  c.dst.group, c.dst.graph);
  c.cert.iso = iso_from_json(field_at(j, "iso", "certificate"));
  c.cert.morphism = morphism_from_json(field_at(j, "morphism", "certificate"), c.src.graph,
                                       c.dst.graph, c.src.group, c.dst.group);
  c.cert.residual = field_at(j, "residual", "certificate").get<double>();
  return c;
}

Json potential_to_json(const GaugePotential& A) {
  Json j{{"dim", A.dim}};
  if (A.catalog == GaugePotential::Catalog::ConstantSU2) {
    j["group"] = "SU2";
    j["catalog"] = "constant";
    Json coeffs = Json::array();
    for (const auto& v : A.su2) coeffs.push_back(Json::array({v[0], v[1], v[2]}));
    j["coeffs"] = coeffs;
  } else {
    j["group"] = "U1";
    j["catalog"] = A.catalog == GaugePotential::Catalog::ConstantAbelian ? "constant" : "polynomial";
    j["coeffs"] = A.coeffs;
  }
  j["tol"] = A.group.tolerance;
  return j;
}

GaugePotential potential_from_json(const Json& j) {
  check_keys(j, {"dim", "group", "catalog", "coeffs", "tol"}, "potential");
  int dim = field_at(j, "dim", "potential").get<int>();
  std::string group = field_at(j, "group", "potential").get<std::string>();
  std::string catalog = field_at(j, "catalog", "potential").get<std::string>();
  double tol = j.value("tol", 1e-9);
  const Json& coeffs = field_at(j, "coeffs", "potential");
  if (group == "SU2") {
    if (catalog != "constant") throw ParseError("potential: SU2 catalog supports \"constant\" only");
    std::vector<std::array<double, 3>> per_axis;
    for (const auto& v : coeffs) {
      if (!v.is_array() || v.size() != 3)
        throw ParseError("potential: SU2 coefficients are per-axis 3-vectors");
      per_axis.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    }
    return GaugePotential::constant_su2(dim, per_axis, tol);
  }
  if (group != "U1") throw ParseError("potential: unknown group \"" + group + "\"");
  if (catalog == "constant") {
    std::vector<double> per_axis;
    for (const auto& v : coeffs)
      per_axis.push_back(v.is_array() ? v[0].get<double>() : v.get<double>());
    return GaugePotential::constant_u1(dim, per_axis, tol);
  }
  if (catalog == "linear" || catalog == "polynomial") {
    std::vector<std::vector<double>> per_axis;
    for (const auto& v : coeffs) per_axis.push_back(v.get<std::vector<double>>());
    return GaugePotential::polynomial_u1(dim, per_axis, tol);
  }
  throw ParseError("potential: unknown catalog \"" + catalog + "\"");
}

Json curve_to_json(const PiecewiseSmoothCurve& c) {
  Json segs = Json::array();
  for (const auto& s : c.segments) {
    switch (s.type) {
      case Segment::Type::Line:
        segs.push_back({{"type", "line"},
                        {"from", Json::array({s.p0[0], s.p0[1], s.p0[2]})},
                        {"to", Json::array({s.p1[0], s.p1[1], s.p1[2]})}});
        break;
      case Segment::Type::Arc:
        segs.push_back({{"type", "arc"},
                        {"center", Json::array({s.center[0], s.center[1], s.center[2]})},
                        {"radius", s.radius},
                        {"from_angle", s.ang0},
                        {"to_angle", s.ang1}});
        break;
      case Segment::Type::Cubic:
        segs.push_back({{"type", "cubic"},
                        {"points", Json::array({Json::array({s.p0[0], s.p0[1], s.p0[2]}),
                                                Json::array({s.p1[0], s.p1[1], s.p1[2]}),
                                                Json::array({s.p2[0], s.p2[1], s.p2[2]}),
                                                Json::array({s.p3[0], s.p3[1], s.p3[2]})})}});
        break;
    }
  }
  return {{"dim", c.dim}, {"segments", segs}};
}

namespace {

Point point_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3))
    throw ParseError(where + ": expected a 2- or 3-vector");
  Point p{0, 0, 0};
  for (std::size_t i = 0; i < j.size(); ++i) p[i] = j[i].get<double>();
  return p;
}

}  // namespace

PiecewiseSmoothCurve curve_from_json(const Json& j) {
  check_keys(j, {"dim", "segments"}, "curve");
  int dim = field_at(j, "dim", "curve").get<int>();
  std::vector<Segment> segs;
  for (const auto& s : field_at(j, "segments", "curve")) {
    std::string type = field_at(s, "type", "curve.segment").get<std::string>();
    if (type == "line") {
      check_keys(s, {"type", "from", "to"}, "curve.segment");
      segs.push_back(Segment::line(point_from_json(field_at(s, "from", "segment"), "segment.from"),
                                   point_from_json(field_at(s, "to", "segment"), "segment.to")));
    } else if (type == "arc") {
      check_keys(s, {"type", "center", "radius", "from_angle", "to_angle"}, "curve.segment");
      segs.push_back(
          Segment::arc(point_from_json(field_at(s, "center", "segment"), "segment.center"),
                       field_at(s, "radius", "segment").get<double>(),
                       field_at(s, "from_angle", "segment").get<double>(),
                       field_at(s, "to_angle", "segment").get<double>()));
    } else if (type == "cubic") {
      check_keys(s, {"type", "points"}, "curve.segment");
      const Json& pts = field_at(s, "points", "segment");
      if (!pts.is_array() || pts.size() != 4)
        throw ParseError("curve.segment: cubic needs 4 control points");
      segs.push_back(Segment::cubic(
          point_from_json(pts[0], "segment.points"), point_from_json(pts[1], "segment.points"),
          point_from_json(pts[2], "segment.points"), point_from_json(pts[3], "segment.points")));
    } else {
      throw ParseError("curve.segment: unknown type \"" + type + "\"");
    }
  }
  return PiecewiseSmoothCurve::make(dim, std::move(segs));
}

Walk parse_walk_literal(const std::string& text, const GraphPtr& g) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("walk literal: expected \"vertex: step step ...\"");
  std::string vertex = text.substr(0, colon);
  while (!vertex.empty() && vertex.back() == ' ') vertex.pop_back();
  int start = g->vertex(vertex);
  std::vector<EdgeStep> steps;
  std::istringstream rest(text.substr(colon + 1));
  std::string token;
  while (rest >> token) {
    bool reverse = false;
    const std::string superscript = "⁻¹";  // 5 bytes in UTF-8
    if (!token.empty() && token.back() == '~') {
      reverse = true;
      token.pop_back();
    } else if (token.size() >= superscript.size() &&
               token.compare(token.size() - superscript.size(), superscript.size(),
                             superscript) == 0) {
      reverse = true;
      token.resize(token.size() - superscript.size());
    }
    steps.push_back({g->edge(token), !reverse});
  }
  return Walk::make(g, start, std::move(steps));
}

BundlePoint parse_base_literal(const std::string& text, const GroupDescriptor& d,
                               const GraphPtr& g) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("base literal: expected \"vertex:element\"");
  int vertex = g->vertex(text.substr(0, colon));
  std::string elem = text.substr(colon + 1);
  if (elem == "e" || elem.empty()) return {vertex, identity(d)};
  Json j;
  try {
    j = Json::parse(elem);
  } catch (const Json::parse_error& err) {
    throw ParseError(std::string("base literal: element is not valid JSON: ") + err.what());
  }
  return {vertex, element_from_json(j, d)};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw ParseError(path + ": " + err.what());
  }
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
}

}  // namespace hol
