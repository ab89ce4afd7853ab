#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dpsim {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail; ///< measured values against their bounds
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

/// Runs one acceptance check (1..9). Exceptions thrown by the check are
/// reported as a failure with the message in `detail`.
CriterionResult run_criterion(int id);

/// All checks in order; `on_result` is called as each one finishes.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

/// One line: "PASS [k] name: detail (t s)".
std::string format_result(const CriterionResult& r);

} // namespace dpsim
