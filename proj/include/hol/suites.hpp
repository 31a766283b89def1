#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hol/holcat.hpp"
#include "hol/reconstruct.hpp"
#include "hol/report.hpp"
#include "hol/rng.hpp"

namespace hol {

// Seeded generators shared by the property suites.
GraphPtr random_connected_graph(Rng& rng, int max_vertices);
GaugeField random_field(Rng& rng, const GraphPtr& g, const GroupDescriptor& d);
Walk random_walk_from(Rng& rng, const GraphPtr& g, int from, int len);
// Random walk forced to end at `to` via the spanning tree.
Walk random_walk_between(Rng& rng, const GraphPtr& g, const SpanningTree& t, int from, int to,
                         int len);
HolonomyMap random_holonomy_map(Rng& rng, const GraphPtr& g, int base, const GroupDescriptor& d);
GroupHom random_group_iso(Rng& rng, const GroupDescriptor& d);
// Relabeled copy of g together with the relabeling isomorphism.
GraphIso random_relabeling(Rng& rng, const GraphPtr& g);
// Valid arrow out of H built by pushing H forward along random
// (psi, alpha, phi) data.
HolIso random_hol_iso(Rng& rng, const HolonomyMap& H);
HolStarIso random_hol_star_iso(Rng& rng, const HolonomyMap& H);

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::uint64_t trials = 0;  // 0 = the suite's acceptance-criterion default
  double tol = 1e-9;
};

Report run_lemma1_suite(const SuiteConfig& cfg);
Report run_lemma2_suite(const SuiteConfig& cfg);
Report run_prop1_suite(const SuiteConfig& cfg);
Report run_prop2_suite(const SuiteConfig& cfg);
Report run_roundtrip_suite(const SuiteConfig& cfg);
Report run_thm1_suite(const SuiteConfig& cfg);
Report run_thm2_suite(const SuiteConfig& cfg);
Report run_smooth_suite(const SuiteConfig& cfg);

std::vector<std::string> suite_names();
Report run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace hol
