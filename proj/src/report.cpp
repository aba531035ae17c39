#include "flipflow/report.hpp"

#include <sstream>

namespace flipflow {

bool CertificateReport::all_passed() const {
  for (const auto& [ok, _] : checks)
    if (!ok) return false;
  return true;
}

std::string CertificateReport::to_text() const {
  std::ostringstream out;
  out << "verdict: " << verdict << "\n";
  for (const std::string& w : witnesses) out << "witness: " << w << "\n";
  for (const auto& [ok, what] : checks)
    out << (ok ? "  ok   " : "  FAIL ") << what << "\n";
  return out.str();
}

}  // namespace flipflow
