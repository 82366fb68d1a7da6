#pragma once

#include <cstdint>
#include <vector>

#include "pdef/oracle.hpp"

namespace pdef {

struct OracleCheckOptions {
    int runs = 500;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct OracleCheckCase {
    std::uint64_t seed = 0;
    int defenders = 0;
    int tasks = 0;
    bool single_task_subclass = false;  // bundle cap 1, full observability
    bool converged = true;
    ConstraintReport constraints;
    Objective engine;
    Objective optimum;
    Objective greedy;
    bool engine_below_optimum = false;   // lexicographically better than exact: a bug
    bool engine_within_greedy = false;   // engine no worse than greedy
    bool matches_greedy = false;         // identical assignment (subclass only)
};

struct OracleCheckReport {
    std::vector<OracleCheckCase> cases;
    int violations = 0;          // constraint violations summed over cases
    int non_converged = 0;
    int below_optimum = 0;
    int within_greedy = 0;
    int subclass_cases = 0;
    int subclass_greedy_matches = 0;
    int optimal_cases = 0;       // engine objective equals the optimum
    double worst_cost_ratio = 1.0;  // engine / optimum among equal-assigned cases

    bool ok() const {
        return violations == 0 && non_converged == 0 && below_optimum == 0 &&
               subclass_greedy_matches == subclass_cases;
    }
};

// Every fourth instance belongs to the single-task full-observability
// subclass; the rest use random partial observability. Instances are drawn
// from mix_seed(seed, k) and lie within the exact oracle's bounds.
OracleCheckReport run_oracle_check(const OracleCheckOptions& options);

}  // namespace pdef
