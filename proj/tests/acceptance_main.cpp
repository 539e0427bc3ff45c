// Standalone verification gate: runs every checklist criterion on the default
// production grid and reports one PASS/FAIL line per criterion.  Exit code 0
// only if all pass.

#include "extremal_sl/verify.hpp"

#include <iostream>

int main() {
    const auto results = extremal_sl::run_acceptance(4096, std::cout);
    return extremal_sl::all_passed(results) ? 0 : 1;
}
