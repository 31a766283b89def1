#include "hol/report.hpp"

#include <cstdio>
#include <sstream>

namespace hol {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Report::merge(const Report& other) {
  trials += other.trials;
  checks += other.checks;
  for (const auto& n : other.notes) notes.push_back(n);
  for (const auto& f : other.failures) failures.push_back(f);
  if (other.has_residual) residual(other.residual_max);
}

std::string Report::structured() const {
  std::ostringstream os;
  os << "suite=" << suite << "\n";
  os << "seed=" << seed << "\n";
  os << "trials=" << trials << "\n";
  os << "checks=" << checks << "\n";
  if (has_residual) os << "residual_max=" << format_double(residual_max) << "\n";
  for (const auto& n : notes) os << "note=" << n << "\n";
  for (const auto& f : failures) os << "failure=trial:" << f.trial << " " << f.what << "\n";
  os << "verdict=" << (pass() ? "pass" : "fail") << "\n";
  return os.str();
}

std::string Report::text() const {
  std::ostringstream os;
  os << "[" << (pass() ? "PASS" : "FAIL") << "] " << suite << ": " << trials << " trials, "
     << checks << " checks";
  if (has_residual) os << ", max residual " << format_double(residual_max);
  os << "\n";
  for (const auto& n : notes) os << "  note: " << n << "\n";
  std::size_t shown = 0;
  for (const auto& f : failures) {
    if (shown++ >= 10) {
      os << "  ... " << failures.size() - 10 << " more failures\n";
      break;
    }
    os << "  failure (trial " << f.trial << "): " << f.what << "\n";
  }
  return os.str();
}

}  // namespace hol
