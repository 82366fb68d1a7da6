#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "pdef/allocation.hpp"

namespace pdef {

struct DefenderSpec {
    AgentId id{};
    Vec2 position;
};

// A single planning snapshot: who can see which task, with shared cost
// parameters. observes[d][t] pairs defenders[d] with tasks[t].
struct AllocationInstance {
    double now = 0.0;
    CostParams cost;
    std::vector<DefenderSpec> defenders;
    std::vector<Task> tasks;
    std::vector<std::vector<bool>> observes;

    std::vector<AgentInput> agent_inputs() const;
    PathContext empty_context(std::size_t defender) const;
};

// Assignments are ranked lexicographically: more assigned tasks first, then
// lower total path loss.
struct Objective {
    int assigned = 0;
    double cost = 0.0;
};

// Sum of path losses of every defender's path, and the number of tasks
// assigned. Cost is +inf if any path is infeasible.
Objective evaluate(const AllocationInstance& instance, const Assignment& assignment);

struct ConstraintReport {
    int duplicate_assignments = 0;  // a task on more than one path
    int unobserved_assignments = 0; // a task on the path of a defender that cannot see it
    int infeasible_paths = 0;
    int inconsistent_winners = 0;   // winners map disagrees with the paths

    bool ok() const {
        return duplicate_assignments == 0 && unobserved_assignments == 0 &&
               infeasible_paths == 0 && inconsistent_winners == 0;
    }
};

ConstraintReport check_constraints(const AllocationInstance& instance, const Assignment& assignment);

inline constexpr std::size_t kOracleMaxDefenders = 4;
inline constexpr std::size_t kOracleMaxTasks = 6;

struct ExactSolution {
    Assignment assignment;
    Objective objective;
    std::size_t enumeration_count = 0;
};

// Enumerates every placement of every task (unassigned, or at any position
// in the sequence of any defender observing it) and keeps the best feasible
// configuration. Ties keep the first configuration found, which favors lower
// defender ids for lower task indices. Throws std::invalid_argument above
// 4 defenders or 6 tasks.
ExactSolution brute_force_min_cost(const AllocationInstance& instance);

// Sequential greedy insertion: repeatedly commits the globally cheapest
// feasible (defender, task) marginal insertion, ties to the lower defender id
// then the lower task id.
Assignment greedy_matching(const AllocationInstance& instance,
                           std::size_t max_tasks_per_defender = std::numeric_limits<std::size_t>::max());

}  // namespace pdef
