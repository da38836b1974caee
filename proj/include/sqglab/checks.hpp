#pragma once

#include <string>
#include <vector>

namespace sqg {

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    double value = 0.0;     // measured quantity
    double threshold = 0.0; // bound it was held against
};

/// Fast invariant batteries per module family. Suites: "spectral" (field
/// transforms + multiplier operators), "symmetry", "norms", "evolve".
/// "all" runs everything.
std::vector<CheckResult> run_check_suite(const std::string& suite);
std::vector<std::string> check_suite_names();

} // namespace sqg
