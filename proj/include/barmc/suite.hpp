#pragma once

#include <iosfwd>

#include "barmc/faithful.hpp"

namespace barmc {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteOptions {
    uint64_t seed = 1;
};

/* Runs every acceptance criterion; prints one PASS/FAIL line per criterion
 * to `out` as it goes (timings go to the same stream; the returned details
 * are timing-free and deterministic). */
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt, std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& rs);

}  // namespace barmc
