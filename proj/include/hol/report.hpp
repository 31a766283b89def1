#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hol {

struct TrialFailure {
  std::uint64_t trial = 0;
  std::string what;  // self-contained: includes derived seed and inputs
};

// Suite outcome. The structured rendering is line-oriented and
// stable-ordered, so identical runs serialize byte-identically.
struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t checks = 0;
  std::vector<std::string> notes;
  std::vector<TrialFailure> failures;
  bool has_residual = false;
  double residual_max = 0.0;

  bool pass() const { return failures.empty(); }
  void fail(std::uint64_t trial, const std::string& what) { failures.push_back({trial, what}); }
  void residual(double r) {
    has_residual = true;
    if (r > residual_max) residual_max = r;
  }
  void merge(const Report& other);

  std::string structured() const;
  std::string text() const;
};

std::string format_double(double v);

}  // namespace hol
