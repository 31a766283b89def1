#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hol/serialize.hpp"
#include "hol/suites.hpp"

namespace {

using namespace hol;

// Exit codes: 0 pass, 1 failed verdict / refutation, 2 parse or validation
// error, 3 search bound exceeded, 4 file I/O error.
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitBounds = 3;
constexpr int kExitIo = 4;

std::string resolve_input(const std::string& path) {
  std::ifstream probe(path);
  if (probe.good()) return path;
  if (const char* dir = std::getenv("HOL_FIXTURES")) {
    std::string candidate = std::string(dir) + "/" + path;
    std::ifstream p2(candidate);
    if (p2.good()) return candidate;
  }
  std::string bundled = "fixtures/" + path;
  std::ifstream p3(bundled);
  if (p3.good()) return bundled;
  return path;  // let the loader report the failure
}

struct GlobalOpts {
  std::uint64_t seed = 42;
  std::uint64_t trials = 0;
  double tol = 1e-9;
  std::string format = "text";
  std::uint64_t max_group_order = 64;
  std::size_t max_vertices = 10;
};

void print_report(const Report& rep, const GlobalOpts& g) {
  if (g.format == "structured")
    std::cout << rep.structured();
  else
    std::cout << rep.text();
}

int run_eval(const std::string& field_path, const std::string& loop, const std::string& base) {
  GaugeField field = field_from_json(load_json_file(resolve_input(field_path)));
  Walk w = parse_walk_literal(loop, field.graph);
  BundlePoint u = parse_base_literal(base, field.group, field.graph);
  GroupElement h = holonomy(field, w, u);
  std::cout << h.str() << "\n";
  return 0;
}

int run_reconstruct(const std::string& map_path, const std::string& out) {
  HolonomyMap H = map_from_json(load_json_file(resolve_input(map_path)));
  ReconstructionResult r = reconstruct(H);
  Json j = field_to_json(r.field);
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json_file(out, j);
  return 0;
}

int run_iso_find_maps(const std::string& src_path, const std::string& dst_path,
                      const GlobalOpts& g, const std::string& out) {
  HolonomyMap H = map_from_json(load_json_file(resolve_input(src_path)));
  HolonomyMap Hp = map_from_json(load_json_file(resolve_input(dst_path)));
  GaugeEquivalenceOptions opts;
  opts.max_group_order = g.max_group_order;
  opts.max_vertices = g.max_vertices;
  HolIsoSearchResult res = find_hol_iso(H, Hp, opts);
  switch (res.status) {
    case GaugeEquivalenceResult::Status::Equivalent: {
      std::cout << "isomorphic: psi/alpha/phi certificate found\n";
      Json j = iso_to_json(*res.iso);
      if (out.empty())
        std::cout << j.dump(2) << "\n";
      else
        save_json_file(out, j);
      return 0;
    }
    case GaugeEquivalenceResult::Status::Refuted:
      std::cout << "not isomorphic: " << res.detail << "\n";
      return kExitFail;
    case GaugeEquivalenceResult::Status::Inconclusive:
      std::cout << "none found (within search bounds): " << res.detail << "\n";
      return kExitFail;
  }
  return kExitFail;
}

int run_iso_find_fields(const std::string& src_path, const std::string& src_base,
                        const std::string& dst_path, const std::string& dst_base,
                        const GlobalOpts& g, const std::string& out) {
  GaugeField src = field_from_json(load_json_file(resolve_input(src_path)));
  GaugeField dst = field_from_json(load_json_file(resolve_input(dst_path)));
  BundlePoint u = parse_base_literal(src_base, src.group, src.graph);
  BundlePoint up = parse_base_literal(dst_base, dst.group, dst.graph);
  GaugeEquivalenceOptions opts;
  opts.max_group_order = g.max_group_order;
  opts.max_vertices = g.max_vertices;
  GaugeEquivalenceResult res = gauge_equivalent(src, u, dst, up, opts);
  switch (res.status) {
    case GaugeEquivalenceResult::Status::Equivalent: {
      CertificateFile cf{src, u, dst, up, *res.certificate};
      std::cout << "equivalent: certificate residual "
                << format_double(res.certificate->residual) << "\n";
      if (!out.empty()) save_json_file(out, certificate_to_json(cf));
      return 0;
    }
    case GaugeEquivalenceResult::Status::Refuted: {
      std::cout << "not equivalent: " << res.detail << "\n";
      if (res.witness) {
        std::cout << "witness loop: " << res.witness->loop << " (holonomy order "
                  << res.witness->src_order << ")\n";
        if (!out.empty()) {
          Json j{{"refuted", true},
                 {"witness_loop", res.witness->loop},
                 {"src_order", res.witness->src_order},
                 {"dst_orders", res.witness->dst_orders},
                 {"detail", res.detail}};
          save_json_file(out, j);
        }
      }
      return kExitFail;
    }
    case GaugeEquivalenceResult::Status::Inconclusive:
      std::cout << "inconclusive (within search bounds): " << res.detail << "\n";
      return kExitFail;
  }
  return kExitFail;
}

int run_iso_apply(const std::string& iso_path, const std::string& src_path,
                  const std::string& src_base, const std::string& dst_path,
                  const std::string& dst_base, const std::string& out) {
  HolIso iso = iso_from_json(load_json_file(resolve_input(iso_path)));
  GaugeField src = field_from_json(load_json_file(resolve_input(src_path)));
  GaugeField dst = field_from_json(load_json_file(resolve_input(dst_path)));
  BundlePoint u = parse_base_literal(src_base, src.group, src.graph);
  BundlePoint up = parse_base_literal(dst_base, dst.group, dst.graph);
  BundleMorphism m = functor_on_arrow(iso, src, u, dst, up);
  EquivalenceCertificate cert{iso, m, morphism_connection_residual(m, src, dst)};
  CertificateFile cf{src, u, dst, up, cert};
  std::cout << "bundle morphism constructed, residual " << format_double(cert.residual) << "\n";
  if (!out.empty()) save_json_file(out, certificate_to_json(cf));
  return 0;
}

// Accepts either an inline descriptor ({"kind":...}) or a file path.
GroupDescriptor group_from_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') {
    try {
      return descriptor_from_json(Json::parse(arg));
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("group descriptor: ") + e.what());
    }
  }
  return descriptor_from_json(load_json_file(resolve_input(arg)));
}

int run_q_check(const std::string& graph_path, const std::string& group_text,
                const GlobalOpts& g) {
  GraphPtr graph = graph_from_json(load_json_file(resolve_input(graph_path)));
  GroupDescriptor d = group_from_arg(group_text);
  QSplitWitness w = q_not_split_witness(graph, d);
  Report rep;
  rep.suite = "q-check";
  rep.seed = g.seed;
  rep.trials = 1;
  rep.checks = 2;
  if (!w.hol_composite_is_identity) rep.fail(0, "hol composite is not the identity arrow");
  if (!w.star_composite_nonempty) rep.fail(0, "star composite reduced to the identity");
  rep.notes.push_back(w.summary);
  print_report(rep, g);
  return rep.pass() ? 0 : kExitFail;
}

int run_props(const std::string& suite, const GlobalOpts& g, const std::string& out) {
  SuiteConfig cfg;
  cfg.seed = g.seed;
  cfg.trials = g.trials;
  cfg.tol = g.tol;
  Report rep = run_suite(suite, cfg);
  print_report(rep, g);
  if (!out.empty()) save_text_file(out, rep.structured());
  return rep.pass() ? 0 : kExitFail;
}

int run_verify(const std::string& cert_path, const GlobalOpts& g) {
  CertificateFile cf = certificate_from_json(load_json_file(resolve_input(cert_path)));
  CertificateCheck check = verify_certificate(cf.cert, cf.src, cf.src_base, cf.dst, cf.dst_base);
  Report rep;
  rep.suite = "verify";
  rep.seed = g.seed;
  rep.trials = 1;
  rep.checks = 3;
  rep.residual(check.residual);
  if (!check.ok) rep.fail(0, check.detail);
  print_report(rep, g);
  return check.ok ? 0 : kExitFail;
}

int run_smooth_holonomy(const std::string& pot_path, const std::string& curve_path, int steps) {
  GaugePotential A = potential_from_json(load_json_file(resolve_input(pot_path)));
  PiecewiseSmoothCurve c = curve_from_json(load_json_file(resolve_input(curve_path)));
  GroupElement h = transport_ode(A, c, steps);
  std::cout << h.str() << "\n";
  return 0;
}

int run_smooth_family(const std::string& pot_path, const std::string& family, int grid, int steps,
                      const GlobalOpts& g) {
  GaugePotential A = potential_from_json(load_json_file(resolve_input(pot_path)));
  LoopFamily fam;
  if (family == "circles") {
    fam.catalog = LoopFamily::Catalog::Circles;
    fam.basepoint = Point{0.3, 0.2, 0};
    fam.normal = Point{1, 0, 0};
    fam.lo0 = 0.2;
    fam.hi0 = 0.8;
  } else if (family == "rectangles") {
    fam.catalog = LoopFamily::Catalog::Rectangles;
    fam.basepoint = Point{0.1, 0.1, 0};
    fam.lo0 = fam.lo1 = 0.2;
    fam.hi0 = fam.hi1 = 0.6;
  } else if (family == "lasso") {
    fam.catalog = LoopFamily::Catalog::Lasso;
    fam.basepoint = Point{0, 0, 0};
    fam.normal = Point{0, 1, 0};
    fam.lo0 = fam.lo1 = 0.3;
    fam.hi0 = fam.hi1 = 0.7;
    fam.lasso_radius = 0.2;
  } else {
    throw PreconditionError("unknown family: " + family +
                            " (expected circles, rectangles, lasso)");
  }
  FamilyReport fr = family_smoothness_check(A, fam, grid, steps);
  print_report(fr.report, g);
  return fr.report.pass() ? 0 : kExitFail;
}

int run_smooth_lattice(const std::string& pot_path, const std::string& box, int res,
                       const std::string& out) {
  GaugePotential A = potential_from_json(load_json_file(resolve_input(pot_path)));
  std::vector<double> b;
  std::istringstream is(box);
  std::string tok;
  while (std::getline(is, tok, ',')) b.push_back(std::stod(tok));
  if (static_cast<int>(b.size()) != 2 * A.dim)
    throw ParseError("--box needs " + std::to_string(2 * A.dim) + " comma-separated numbers");
  Point lo{b[0], b[1], A.dim == 3 ? b[2] : 0};
  Point hi{b[static_cast<std::size_t>(A.dim)], b[static_cast<std::size_t>(A.dim) + 1],
           A.dim == 3 ? b[5] : 0};
  GaugeField field = lattice_discretize(A, lo, hi, res);
  Json j = field_to_json(field);
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json_file(out, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hol: discrete gauge fields, holonomy maps, and their equivalence"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed for randomized suites");
  app.add_option("--trials", g.trials, "override per-suite trial counts");
  app.add_option("--tol", g.tol, "matrix-kind tolerance");
  app.add_option("--format", g.format, "report format: text | structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--max-group-order", g.max_group_order, "isomorphism search order cap");
  app.add_option("--max-vertices", g.max_vertices, "graph isomorphism vertex cap");

  std::string field_path, loop, base, map_path, out;
  auto* eval = app.add_subcommand("eval", "holonomy of a loop in a gauge field");
  eval->add_option("--field", field_path)->required();
  eval->add_option("--loop", loop, "walk literal, e.g. \"x: a b~ a\"")->required();
  eval->add_option("--base", base, "base point literal, e.g. \"x:e\"")->required();

  auto* rec = app.add_subcommand("reconstruct", "spanning-tree gauge field from a holonomy map");
  rec->add_option("--map", map_path)->required();
  rec->add_option("--out", out);

  std::string src_path, dst_path, src_base, dst_base, iso_path;
  auto* iso_find = app.add_subcommand("iso-find", "search for a holonomy isomorphism");
  iso_find->add_option("--src", src_path, "source holonomy map file");
  iso_find->add_option("--dst", dst_path, "target holonomy map file");
  iso_find->add_option("--src-field", field_path);
  iso_find->add_option("--src-base", src_base);
  std::string dst_field_path;
  iso_find->add_option("--dst-field", dst_field_path);
  iso_find->add_option("--dst-base", dst_base);
  iso_find->add_option("--out", out);

  auto* iso_apply = app.add_subcommand("iso-apply", "bundle morphism from a holonomy isomorphism");
  iso_apply->add_option("--iso", iso_path)->required();
  iso_apply->add_option("--src-field", field_path)->required();
  iso_apply->add_option("--src-base", src_base)->required();
  iso_apply->add_option("--dst-field", dst_field_path)->required();
  iso_apply->add_option("--dst-base", dst_base)->required();
  iso_apply->add_option("--out", out);

  std::string graph_path, group_text = "{\"kind\":\"cyclic\",\"n\":2}";
  auto* q_check = app.add_subcommand("q-check", "quotient functor non-splitting witness");
  q_check->add_option("--graph", graph_path)->required();
  q_check->add_option("--group", group_text, "group descriptor JSON");

  std::string suite;
  auto* props = app.add_subcommand("props", "randomized property suites");
  props->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember(suite_names()));
  props->add_option("--out", out, "write the structured report to a file");

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "re-verify an equivalence certificate");
  verify->add_option("cert", cert_path, "certificate file")->required();

  auto* smooth = app.add_subcommand("smooth", "continuum-side checks");
  smooth->require_subcommand(1);
  std::string pot_path, curve_path, family = "circles", box = "0,0,1,1";
  int steps = 4096, grid = 33, res = 64;
  auto* sh = smooth->add_subcommand("holonomy", "path-ordered transport along a curve");
  sh->add_option("--potential", pot_path)->required();
  sh->add_option("--curve", curve_path)->required();
  sh->add_option("--steps", steps);
  auto* sf = smooth->add_subcommand("family", "smoothness of a loop family");
  sf->add_option("--potential", pot_path)->required();
  sf->add_option("--family", family)->check(CLI::IsMember({"circles", "rectangles", "lasso"}));
  sf->add_option("--grid", grid);
  sf->add_option("--steps", steps);
  auto* sl = smooth->add_subcommand("lattice", "discretize a potential onto a grid graph");
  sl->add_option("--potential", pot_path)->required();
  sl->add_option("--box", box, "lo,lo[,lo],hi,hi[,hi]");
  sl->add_option("--res", res);
  sl->add_option("--out", out);

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return run_eval(field_path, loop, base);
    if (*rec) return run_reconstruct(map_path, out);
    if (*iso_find) {
      if (!src_path.empty() && !dst_path.empty())
        return run_iso_find_maps(src_path, dst_path, g, out);
      if (!field_path.empty() && !dst_field_path.empty())
        return run_iso_find_fields(field_path, src_base, dst_field_path, dst_base, g, out);
      std::cerr << "iso-find: pass either --src/--dst maps or --src-field/--dst-field\n";
      return kExitParse;
    }
    if (*iso_apply)
      return run_iso_apply(iso_path, field_path, src_base, dst_field_path, dst_base, out);
    if (*q_check) return run_q_check(graph_path, group_text, g);
    if (*props) return run_props(suite, g, out);
    if (*verify) return run_verify(cert_path, g);
    if (*sh) return run_smooth_holonomy(pot_path, curve_path, steps);
    if (*sf) return run_smooth_family(pot_path, family, grid, steps, g);
    if (*sl) return run_smooth_lattice(pot_path, box, res, out);
  } catch (const BoundsError& e) {
    std::cerr << "bounds error: " << e.what() << "\n";
    return kExitBounds;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitParse;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitParse;
}
