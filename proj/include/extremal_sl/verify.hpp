#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace extremal_sl {

struct CriterionResult {
    std::string name;
    bool passed;
    std::string detail;   ///< measured quantities vs. their bounds
};

/// Runs the full verification checklist on a grid with n intervals, printing
/// one "[PASS]"/"[FAIL]" line per criterion to `out` as results arrive.
/// Criteria keep going after failures so the report is always complete.
std::vector<CriterionResult> run_acceptance(std::size_t n, std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace extremal_sl
