// The library's self-check battery: every headline number and structural
// identity, each packaged as one runnable criterion with its tolerance and
// a human-readable detail line.  Used by the reproduce command and by the
// acceptance test driver.

#pragma once

#include <cstdint>
#include <string>

namespace hedgelab {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    std::int64_t wall_ms = 0;
};

// Number of criteria runnable in-process.  (The end-to-end CLI check lives
// in the acceptance driver, which spawns the binary.)
inline constexpr int kCriterionCount = 14;

// Runs one criterion, 1-based.  `sabotage` perturbs the expected constant
// of criterion 2; it exists so the failure path of the reproduce command
// can be exercised deliberately.
CriterionResult run_criterion(int id, bool sabotage = false);

}  // namespace hedgelab
