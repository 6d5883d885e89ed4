#pragma once

#include <functional>
#include <string>
#include <vector>

#include "permb/matrix.hpp"

namespace permb {

struct CheckResult {
    std::string name;
    std::size_t n = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    std::size_t max_n = 4;
    std::uint64_t seed = 12345;
    std::size_t matrices_per_n = 5;
    // test hook: applied to each random matrix before the oracles run on it;
    // a corrupting transform must make the battery fail
    std::function<double(const NonNegMatrix&)> pairsum_override;
};

// Runs the cross-oracle identity battery (pair sum vs grouped vs cover
// average vs NFG partition function, plus cycle-index and moment identities)
// on random matrices up to max_n.
std::vector<CheckResult> verify_suite(const VerifyOptions& opt);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace permb
