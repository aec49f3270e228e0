#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kaylab {

// Search/enumeration refused or aborted because the configured budget would
// be exceeded; carries a human-readable size estimate.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what, std::string estimate_ = "")
        : std::runtime_error(what), estimate(std::move(estimate_)) {}
    std::string estimate;
};

// A hypergraph offered where the extension-parity condition must hold fails
// it; carries the lexicographically least violating vertex subset.
struct ParityViolation : std::runtime_error {
    ParityViolation(const std::string& what, std::vector<int> subset_)
        : std::runtime_error(what), subset(std::move(subset_)) {}
    std::vector<int> subset;
};

}  // namespace kaylab
