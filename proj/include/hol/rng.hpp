#pragma once

#include <cstdint>

namespace hol {

// Counter-based deterministic generator (splitmix64). A trial stream is
// derived from (master seed, trial index), so any failing trial can be
// re-run in isolation and trials may be evaluated in any order without
// changing the report.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng for_trial(std::uint64_t master, std::uint64_t trial) {
    Rng r(master ^ (0x9e3779b97f4a7c15ull * (trial + 1)));
    r.next();
    r.next();
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n == 0 yields 0.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  // Uniform in [lo, hi], inclusive.
  int range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform double in [0, 1).
  double real() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

  bool chance(double p) { return real() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace hol
