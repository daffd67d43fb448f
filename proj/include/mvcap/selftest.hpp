#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mvcap {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the twelve acceptance criteria, printing one PASS/FAIL line per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

}  // namespace mvcap
