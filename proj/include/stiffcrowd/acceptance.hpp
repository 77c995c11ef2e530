#pragma once

#include <functional>
#include <string>
#include <vector>

namespace stiffcrowd {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceReport {
  std::string suite;
  std::vector<CriterionResult> results;

  bool passed() const;
};

/// Suite names: "core" runs every criterion, "quick" a subset that finishes in under a minute.
const std::vector<std::string>& acceptance_suites();
/// Criterion ids of a suite; throws UnknownSuite.
std::vector<int> suite_criteria(const std::string& suite);

/// Runs the criteria of `suite` in order, reporting each result as soon as it is known.
AcceptanceReport run_acceptance(const std::string& suite,
                                const std::function<void(const CriterionResult&)>& on_result = {});

/// `PASS  3 shock speed ...` style single line.
std::string format_result(const CriterionResult& r);

}  // namespace stiffcrowd
