// Acceptance suite runner: one pass/fail line per criterion, nonzero exit
// on any failure. `ctest -R acceptance` runs it; a criterion id prefix can
// be passed to narrow the run.

#include <cstdio>

#include "wmsim/validation.hpp"

int main(int argc, char** argv) {
    const std::string filter = argc > 1 ? argv[1] : "";
    const auto results = wmsim::run_acceptance(filter);
    if (results.empty()) {
        std::fprintf(stderr, "no criterion matches '%s'\n", filter.c_str());
        return 2;
    }
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %s %s: %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                    r.title.c_str(), r.detail.c_str());
        if (!r.passed) ++failures;
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}
