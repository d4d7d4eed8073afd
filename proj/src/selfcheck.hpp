#ifndef DTRACK_SELFCHECK_HPP
#define DTRACK_SELFCHECK_HPP

#include <string>
#include <vector>

namespace dtrack {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Evaluates the bound formulas against independently computed reference
// values (40-digit arithmetic, frozen here) and a handful of algebraic
// identities. Comparisons use relative tolerance 1e-9.
std::vector<CheckResult> run_selfcheck();

}  // namespace dtrack

#endif
