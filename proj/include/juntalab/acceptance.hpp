#pragma once

#include <string>
#include <vector>

namespace juntalab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Runs the acceptance battery (all criteria, or the listed subset) and
// returns one result per criterion.
std::vector<CriterionResult> run_acceptance_suite(const std::vector<int>& only = {});

}  // namespace juntalab
