#pragma once

// Built-in acceptance suite: each criterion runs on frozen fixtures at
// pinned tolerances and reports one pass/fail result with measured numbers.

#include <string>
#include <vector>

namespace wmsim {

struct CriterionResult {
    std::string id;      // "A1".."A7"
    std::string title;
    bool passed = false;
    std::string detail;  // measured slopes/gaps/residuals
};

/// Run all criteria (or the ones whose id starts with `filter`).
std::vector<CriterionResult> run_acceptance(const std::string& filter = "");

}  // namespace wmsim
