#pragma once

// Property suites run by `verify` over the objects of a workspace.

#include <cstdint>
#include <string>
#include <vector>

#include "tatecup/workspace.hpp"

namespace tatecup {

struct Check {
    std::string name;
    bool pass = true;
    std::string witness;  // first failing datum, empty on success
};

struct VerifyOptions {
    std::string suite;       // empty: every suite
    uint64_t seed = 1;
    int samples = 32;        // random samples per randomized check
    int lift_pairs = 8;      // random lift pairs per acup input
};

// complex, known, cup, acup, connecting, induction
const std::vector<std::string>& suite_names();

// Checks come out in a fixed order: suites in the order above, objects by name.
std::vector<Check> run_verify(const Workspace& ws, const VerifyOptions& opts);

}  // namespace tatecup
