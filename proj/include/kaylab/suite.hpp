#pragma once

// The verify-suite battery: exhaustive small-scale equivalences,
// constructive certificates and property sweeps, tiered for CI use.
// Tier 1 criteria run in seconds; tier 2 holds the large exhaustive sweeps.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace kaylab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    std::int64_t millis = 0;
};

struct SuiteOptions {
    int tier = 0;  // 0 = all, 1 = fast battery, 2 = large sweeps
    std::filesystem::path out_dir = "verify-out";
    bool deterministic = true;
    int workers = 1;
};

struct SuiteReport {
    std::vector<CriterionResult> results;
    bool all_pass = true;
    std::filesystem::path manifest_path;
};

SuiteReport run_verify_suite(const SuiteOptions& opts);

// Runs the battery twice under --deterministic and byte-compares every
// emitted artifact; optionally hands back the first run's report.
CriterionResult run_determinism_check(const SuiteOptions& base, SuiteReport* first_run = nullptr);

}  // namespace kaylab
