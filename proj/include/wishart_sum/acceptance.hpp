// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks against the published benchmark numbers.  Each criterion
// prints one pass/fail line; run_all returns true only if every one passed.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wishart_sum::acceptance {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CriterionResult> run_all(std::ostream &log);

} // namespace wishart_sum::acceptance
