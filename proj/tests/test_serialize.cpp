#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hol/serialize.hpp"
#include "hol/suites.hpp"

using namespace hol;

namespace {

bool field_equal(const GaugeField& a, const GaugeField& b) {
  if (!a.graph->same_structure(*b.graph) || a.group != b.group) return false;
  for (std::size_t i = 0; i < a.links.size(); ++i)
    if (!equal(a.links[i], b.links[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("descriptor and element round trips, every kind") {
  Rng rng(1);
  const std::vector<GroupDescriptor> kinds = {
      GroupDescriptor::cyclic(12),    GroupDescriptor::symmetric(4), GroupDescriptor::dihedral(5),
      GroupDescriptor::quaternion8(), GroupDescriptor::u1(),         GroupDescriptor::su2()};
  for (const auto& d : kinds) {
    CHECK(descriptor_from_json(descriptor_to_json(d)) == d);
    for (int t = 0; t < 50; ++t) {
      GroupElement g = random_element(d, rng);
      CHECK(equal(element_from_json(element_to_json(g), d), g));
    }
  }
}

TEST_CASE("element parsing rejects malformed payloads") {
  GroupDescriptor c4 = GroupDescriptor::cyclic(4);
  CHECK_THROWS_AS(element_from_json(Json::parse("7"), c4), ParseError);
  GroupDescriptor s3 = GroupDescriptor::symmetric(3);
  CHECK_THROWS_AS(element_from_json(Json::parse("[0,0,1]"), s3), ParseError);
  GroupDescriptor su2 = GroupDescriptor::su2();
  CHECK_THROWS_AS(element_from_json(Json::parse("[1,0,0]"), su2), ParseError);
  CHECK_THROWS_AS(element_from_json(Json::parse("[2,0,0,0]"), su2), ParseError);
  GroupDescriptor q8 = GroupDescriptor::quaternion8();
  CHECK_THROWS_AS(element_from_json(Json::parse("\"m\""), q8), ParseError);
}

TEST_CASE("graph, field, map round trips on random values") {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    GraphPtr g = random_connected_graph(rng, 8);
    GraphPtr g2 = graph_from_json(graph_to_json(*g));
    CHECK(g->same_structure(*g2));

    GroupDescriptor d =
        t % 2 ? GroupDescriptor::symmetric(4) : GroupDescriptor::su2();
    GaugeField f = random_field(rng, g, d);
    CHECK(field_equal(field_from_json(field_to_json(f)), f));

    HolonomyMap H = random_holonomy_map(rng, g, static_cast<int>(rng.below(g->vertices.size())), d);
    HolonomyMap H2 = map_from_json(map_to_json(H));
    CHECK(object_equal(H, H2));
  }
}

TEST_CASE("unknown fields are rejected by name") {
  CHECK_THROWS_WITH_AS(descriptor_from_json(Json::parse(R"({"kind":"cyclic","n":3,"bogus":1})")),
                       doctest::Contains("bogus"), ParseError);
  CHECK_THROWS_WITH_AS(
      graph_from_json(Json::parse(R"({"vertices":["x"],"edges":[],"extra":[]})")),
      doctest::Contains("extra"), ParseError);
}

TEST_CASE("missing fields are named") {
  CHECK_THROWS_WITH_AS(
      field_from_json(Json::parse(
          R"({"graph":{"vertices":["x"],"edges":[{"name":"a","tail":"x","head":"x"}]},"group":{"kind":"cyclic","n":2}})")),
      doctest::Contains("links"), ParseError);
  CHECK_THROWS_WITH_AS(
      field_from_json(Json::parse(
          R"({"graph":{"vertices":["x"],"edges":[{"name":"a","tail":"x","head":"x"}]},"group":{"kind":"cyclic","n":2},"links":{}})")),
      doctest::Contains("a"), ParseError);
}

TEST_CASE("holonomy map files validate chords against the deterministic tree") {
  GraphPtr theta = theta_graph();
  HolonomyMap H = HolonomyMap::flat(theta, 0, GroupDescriptor::cyclic(2));
  Json j = map_to_json(H);
  Json wrong_tree = j;
  wrong_tree["tree"] = Json::array({"b"});
  CHECK_THROWS_WITH_AS(map_from_json(wrong_tree), doctest::Contains("tree"), ParseError);
  Json image_on_tree_edge = j;
  image_on_tree_edge["images"]["a"] = 0;
  CHECK_THROWS_WITH_AS(map_from_json(image_on_tree_edge), doctest::Contains("chord"), ParseError);
}

TEST_CASE("hom round trips for each rule") {
  Rng rng(3);
  GroupDescriptor s3 = GroupDescriptor::symmetric(3);
  GroupHom table = conjugation_hom(random_element(s3, rng));
  CHECK(hom_equal(hom_from_json(hom_to_json(table)), table));
  CHECK(hom_equal(hom_from_json(hom_to_json(identity_hom(s3))), identity_hom(s3)));
  GroupHom u1c = u1_conjugation_hom();
  CHECK(hom_equal(hom_from_json(hom_to_json(u1c)), u1c));
  GroupHom sc = su2_conjugation_hom(Quat{0.5, 0.5, 0.5, 0.5});
  CHECK(hom_equal(hom_from_json(hom_to_json(sc)), sc));

  Json bad = hom_to_json(table);
  bad["images"][0] = element_to_json(GroupElement{s3, std::vector<int>{1, 2, 0}});
  CHECK_THROWS_AS(hom_from_json(bad), ParseError);
}

TEST_CASE("walk literals parse both reverse markers") {
  GraphPtr theta = theta_graph();
  Walk w = parse_walk_literal("x: a b~ c", theta);
  CHECK(w.length() == 3);
  CHECK(w.steps[0].forward);
  CHECK_FALSE(w.steps[1].forward);
  Walk w2 = parse_walk_literal("y: a⁻¹", theta);
  CHECK(w2.start == 1);
  CHECK_FALSE(w2.steps[0].forward);
  CHECK(walk_equal(parse_walk_literal(w.str(), theta), w));
  CHECK_THROWS_AS(parse_walk_literal("z: a", theta), PreconditionError);
  CHECK_THROWS_AS(parse_walk_literal("x: q", theta), PreconditionError);
  CHECK_THROWS_AS(parse_walk_literal("x: a a", theta), PreconditionError);  // endpoint break
}

TEST_CASE("base literals") {
  GraphPtr theta = theta_graph();
  GroupDescriptor c4 = GroupDescriptor::cyclic(4);
  BundlePoint u = parse_base_literal("x:e", c4, theta);
  CHECK(u.vertex == 0);
  CHECK(equal(u.fiber, identity(c4)));
  BundlePoint v = parse_base_literal("y:3", c4, theta);
  CHECK(v.vertex == 1);
  CHECK(equal(v.fiber, GroupElement{c4, 3}));
  CHECK_THROWS_AS(parse_base_literal("x", c4, theta), ParseError);
  CHECK_THROWS_AS(parse_base_literal("x:notjson", c4, theta), ParseError);
}

TEST_CASE("holonomy iso round trip re-validates the diagram") {
  Rng rng(4);
  GraphPtr g = random_connected_graph(rng, 5);
  HolonomyMap H = random_holonomy_map(rng, g, static_cast<int>(rng.below(g->vertices.size())),
                                      GroupDescriptor::dihedral(4));
  HolIso a = random_hol_iso(rng, H);
  HolIso a2 = iso_from_json(iso_to_json(a));
  CHECK(iso_equal(a, a2));

  // Corrupting a domain generator image breaks the diagram: phi is injective
  // and the codomain side is untouched.
  Json tampered = iso_to_json(a);
  REQUIRE(!tampered["dom"]["images"].empty());
  for (auto& [key, value] : tampered["dom"]["images"].items()) {
    if (value.contains("rot"))
      value = Json{{"ref", value["rot"].get<int>()}};
    else
      value = Json{{"rot", value["ref"].get<int>()}};
    break;
  }
  CHECK_THROWS_AS(iso_from_json(tampered), ValidationError);
}

TEST_CASE("certificate files round trip and tampering is caught on re-verification") {
  Rng rng(5);
  GraphPtr g = theta_graph();
  GroupDescriptor d4 = GroupDescriptor::dihedral(4);
  GaugeField src = random_field(rng, g, d4);
  GaugeTransformation tr{d4, {identity(d4), random_element(d4, rng)}};
  GaugeField dst = apply_gauge(src, tr);
  BundlePoint u{0, identity(d4)};
  GaugeEquivalenceResult res = gauge_equivalent(src, u, dst, u);
  REQUIRE(res.status == GaugeEquivalenceResult::Status::Equivalent);

  CertificateFile cf{src, u, dst, u, *res.certificate};
  Json j = certificate_to_json(cf);
  CertificateFile back = certificate_from_json(j);
  CHECK(field_equal(back.src, src));
  CHECK(field_equal(back.dst, dst));
  CHECK(verify_certificate(back.cert, back.src, back.src_base, back.dst, back.dst_base).ok);

  // One-bit tamper: nudge a destination link.
  Json bad = j;
  for (auto& [name, value] : bad["dst_field"]["links"].items()) {
    if (value.contains("rot"))
      value = Json{{"rot", (value["rot"].get<int>() + 1) % 4}};
    else
      value = Json{{"rot", 1}};
    break;
  }
  CertificateFile tampered = certificate_from_json(bad);
  CHECK_FALSE(
      verify_certificate(tampered.cert, tampered.src, tampered.src_base, tampered.dst,
                         tampered.dst_base)
          .ok);
}

TEST_CASE("potential and curve files round trip") {
  GaugePotential quad = GaugePotential::polynomial_u1(
      2, {{0.0, 0.0, 0.3, 0.0, 0.1, 0.2}, {0.1, 0.4, 0.0, 0.25, 0.0, 0.15}});
  GaugePotential q2 = potential_from_json(potential_to_json(quad));
  CHECK(q2.coeffs == quad.coeffs);
  CHECK(q2.group == quad.group);

  GaugePotential su2 = GaugePotential::constant_su2(
      2, {std::array<double, 3>{0.3, 0.2, 0.1}, std::array<double, 3>{-0.2, 0.4, 0.15}});
  GaugePotential s2 = potential_from_json(potential_to_json(su2));
  CHECK(s2.su2 == su2.su2);

  // The "linear" catalog alias parses as a polynomial entry.
  GaugePotential lin = potential_from_json(
      Json::parse(R"({"dim":2,"group":"U1","catalog":"linear","coeffs":[[0.0],[0.0,0.05]]})"));
  CHECK(lin.coeffs[1][1] == 0.05);

  const double half_pi = 1.5707963267948966;
  PiecewiseSmoothCurve curve = PiecewiseSmoothCurve::make(
      2, {Segment::line({0, 0, 0}, {1, 0, 0}), Segment::arc({1, 0.5, 0}, 0.5, -half_pi, 0),
          Segment::cubic({1.5, 0.5, 0}, {1.2, 0.8, 0}, {0.4, 0.9, 0}, {0, 0, 0})});
  PiecewiseSmoothCurve c2 = curve_from_json(curve_to_json(curve));
  REQUIRE(c2.segments.size() == 3);
  for (double t : {0.0, 0.3, 0.7, 1.0})
    for (std::size_t s = 0; s < 3; ++s)
      for (int axis = 0; axis < 2; ++axis)
        CHECK(c2.segments[s].at(t)[static_cast<std::size_t>(axis)] ==
              doctest::Approx(curve.segments[s].at(t)[static_cast<std::size_t>(axis)]));
  CHECK_THROWS_AS(curve_from_json(Json::parse(R"({"dim":2,"segments":[{"type":"blob"}]})")),
                  ParseError);
}

TEST_CASE("structured reports are deterministic") {
  SuiteConfig cfg;
  cfg.seed = 31337;
  cfg.trials = 20;
  Report a = run_suite("prop1", cfg);
  Report b = run_suite("prop1", cfg);
  CHECK(a.structured() == b.structured());
  CHECK(a.structured().find("verdict=pass") != std::string::npos);
}
