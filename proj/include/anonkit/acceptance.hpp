#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anonkit {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string details;
};

/// Runs the full verification suite: solver cross-agreement, simplex
/// conditions, hierarchy consistency, the 3DM-3 cost identities, the 1-in-3
/// SAT edge-partition reduction end to end, the gadget dichotomy, the
/// incidence-database equivalence, the diversity reductions, and the
/// kernelization contract. One pass/fail line per criterion goes to `log`.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& log);

/// True iff every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace anonkit
