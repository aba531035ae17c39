#pragma once

#include <string>
#include <vector>

namespace flipflow {

// Human-readable certificate report: a verdict, the witnesses that make
// it checkable, and a pass/fail checklist. Rendering is deterministic.
struct CertificateReport {
  std::string verdict;
  std::vector<std::string> witnesses;
  std::vector<std::pair<bool, std::string>> checks;

  void witness(std::string line) { witnesses.push_back(std::move(line)); }
  void check(bool ok, std::string what) {
    checks.push_back({ok, std::move(what)});
  }
  bool all_passed() const;
  std::string to_text() const;
};

}  // namespace flipflow
