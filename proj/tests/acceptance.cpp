// Acceptance gate: each criterion below runs at its pinned trial counts,
// tolerances, and runtime limits, and prints one pass/fail line.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hol/suites.hpp"

using namespace hol;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void line(int criterion, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++failures;
}

std::string note_value(const Report& rep, const std::string& key) {
  for (const auto& n : rep.notes)
    if (n.rfind(key + "=", 0) == 0) return n.substr(key.size() + 1);
  return "";
}

bool has_note_containing(const Report& rep, const std::string& text) {
  for (const auto& n : rep.notes)
    if (n.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

int main() {
  SuiteConfig cfg;
  cfg.seed = 42;

  // 1. Lemma 1: 1000 trials per group kind, graphs <= 10 vertices, exact /
  //    within 1e-9, runtime < 30 s.
  auto t0 = std::chrono::steady_clock::now();
  Report lemma1 = run_lemma1_suite(cfg);
  double dt1 = seconds_since(t0);
  line(1, lemma1.pass() && lemma1.trials == 6000 && lemma1.residual_max <= 1e-9 && dt1 < 30.0,
       "lemma 1 (a)-(d), " + std::to_string(lemma1.trials) + " trials, max residual " +
           format_double(lemma1.residual_max) + ", " + format_double(dt1) + " s");

  // 2. Lemma 2 and base-point conjugation, 500 seeded trials per kind.
  Report lemma2 = run_lemma2_suite(cfg);
  line(2, lemma2.pass() && lemma2.trials == 3000 && lemma2.residual_max <= 1e-9,
       "lemma 2 + base-point conjugation, " + std::to_string(lemma2.trials) +
           " trials, max residual " + format_double(lemma2.residual_max));

  // 3. Prop. 1 groupoid laws on 200 composable triples, both categories.
  Report prop1 = run_prop1_suite(cfg);
  line(3, prop1.pass() && prop1.trials == 200,
       "groupoid laws in Hol and Hol*, " + std::to_string(prop1.trials) + " triples");

  // 4. Quotient functor: functoriality, non-faithfulness, non-splitting.
  Report prop2 = run_prop2_suite(cfg);
  bool witnesses = has_note_containing(prop2, "non-faithfulness witnessed") &&
                   has_note_containing(prop2, "non-splitting witnessed on theta") &&
                   has_note_containing(prop2, "non-splitting witnessed on figure-eight") &&
                   has_note_containing(prop2, "tree graph correctly rejected");
  line(4, prop2.pass() && prop2.trials == 200 && witnesses,
       "quotient functor Q: functoriality on 200 pairs plus all witnesses");

  // 5. Reconstruction round trip (300 maps) and the exhaustive
  //    representation-theorem analog at small scale.
  Report roundtrip = run_roundtrip_suite(cfg);
  line(5, roundtrip.pass() && roundtrip.trials == 300,
       "reconstruction round trip and representation analog, " +
           std::to_string(roundtrip.checks) + " checks");

  // 6. Theorem 1: certificates for 200 constructed pairs, independently
  //    re-verified, residual 0 (finite) / < 1e-8 (matrix).
  Report thm1 = run_thm1_suite(cfg);
  line(6, thm1.pass() && thm1.trials == 200 && thm1.residual_max < 1e-8,
       "theorem 1 certificates, " + std::to_string(thm1.trials) + " pairs, max residual " +
           format_double(thm1.residual_max));

  // 7. Theorem 2 harness: functor laws, fullness round trip, faithfulness,
  //    essential surjectivity; extraction adjustments logged.
  Report thm2 = run_thm2_suite(cfg);
  line(7, thm2.pass() && thm2.trials >= 300,
       "theorem 2 functor harness, " + std::to_string(thm2.checks) + " checks (" +
           note_value(thm2, "extract_adjustment_cases") + " extraction adjustments)");

  // 8. Smooth bridge: flux closed form, integrator order, axioms, family
  //    smoothness, lattice consistency; runtime < 2 min.
  auto t8 = std::chrono::steady_clock::now();
  Report smooth = run_smooth_suite(cfg);
  double dt8 = seconds_since(t8);
  double order = std::stod(note_value(smooth, "integrator_order"));
  line(8,
       smooth.pass() && dt8 < 120.0 && std::abs(order - 2.0) <= 0.2 &&
           std::stod(note_value(smooth, "flux_residual")) < 1e-6,
       "smooth bridge (integrator order " + note_value(smooth, "integrator_order") + "), " +
           format_double(dt8) + " s");

  // 9. Determinism: every suite reproduces a byte-identical structured
  //    report under the same seed.
  bool deterministic = true;
  std::string which;
  for (const auto& name : suite_names()) {
    SuiteConfig small = cfg;
    small.trials = name == "lemma1" || name == "lemma2" ? 50 : 0;
    Report a = run_suite(name, small);
    Report b = run_suite(name, small);
    if (a.structured() != b.structured()) {
      deterministic = false;
      which = name;
    }
  }
  line(9, deterministic,
       deterministic ? "byte-identical structured reports across repeated runs"
                     : "suite " + which + " is not deterministic");

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
