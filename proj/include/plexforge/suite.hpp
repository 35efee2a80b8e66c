#pragma once

#include <functional>
#include <string>
#include <vector>

namespace plexforge {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double elapsed_ms = 0;
    double budget_ms = 0; // exceeding it fails the criterion
};

inline constexpr int kCriterionCount = 11;

/// Runs one acceptance criterion (1..kCriterionCount). Exceptions become
/// failures carrying the error text.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_acceptance_suite(const std::function<void(const CriterionResult&)>& progress = {});

/// "PASS [id] name (elapsed / budget ms): detail"
std::string format_result(const CriterionResult& result);

} // namespace plexforge
