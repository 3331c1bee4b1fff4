#pragma once

#include "nemcone/fixtures.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nemcone {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // computed values, reported verbatim on failure
};

struct Criterion {
  int id = 0;
  std::string group;  // filter name, e.g. "counterexample"
  std::string title;
  std::function<std::vector<CheckResult>(const Fixtures&)> run;
};

struct CriterionResult {
  int id = 0;
  std::string group;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool passed() const;
};

/// The acceptance criteria, in order.
const std::vector<Criterion>& criteria();

/// Selects criteria by group name or by number; an empty filter selects all.
/// Unknown filter entries throw std::invalid_argument.
std::vector<const Criterion*> select_criteria(const std::vector<std::string>& filter);

/// A failing or throwing check is recorded, never propagated. Results keep
/// the order of `selected`.
std::vector<CriterionResult> run_criteria(const std::vector<const Criterion*>& selected,
                                          const Fixtures& fixtures);

/// One "PASS"/"FAIL" line per criterion followed by the failing checks.
std::string format_report(const std::vector<CriterionResult>& results, bool verbose);

}  // namespace nemcone
