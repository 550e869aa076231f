#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ellconn {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    nlohmann::json details = nlohmann::json::object();
    double seconds = 0.0;   // wall time, not part of the JSON report
    double limit = 0.0;     // runtime budget in seconds, 0 if none
};

// Criteria 1-7 and 9. Determinism (8) compares two selftest runs and lives with the CLI.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

CriterionResult criterion_elliptic(std::uint64_t seed);
CriterionResult criterion_hopf(std::uint64_t seed);
CriterionResult criterion_kodaira(std::uint64_t seed);
CriterionResult criterion_torus(std::uint64_t seed);
CriterionResult criterion_secondary(std::uint64_t seed);
CriterionResult criterion_oper(std::uint64_t seed);
CriterionResult criterion_rejection(std::uint64_t seed);
CriterionResult criterion_discrepancy_ledger(std::uint64_t seed);

// Deterministic report: no timings.
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace ellconn
