#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "pdef/tasking.hpp"

namespace pdef {

// Losses are plain doubles; +inf marks an infeasible leg or path and is
// ordered above every finite loss.
inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

inline bool is_feasible_loss(double loss) { return loss < kInfeasible; }

// Time origin used by the temporal loss.
//  planning_time: deadlines are measured from the planning instant, so the
//                 first leg's slack and multiplier start at zero "now".
//  zero:          absolute deadlines with a zero predecessor time for the
//                 first leg, literally.
enum class TimeOrigin { planning_time, zero };

struct CostParams {
    double eta = 0.5;        // weight of the intruder-distance term, in (0, 1)
    double max_speed = 0.0;  // V_D^max, m/s
    TimeOrigin origin = TimeOrigin::planning_time;
};

// A defender's execution path at a planning snapshot. A task placed at
// `slot` has predecessor path[slot - 1], or the defender itself when slot is
// 0. A task's completion time is its deadline: the defender waits at lambda.
struct PathContext {
    AgentId defender{};
    Vec2 start_position;
    double start_time = 0.0;  // planning time, s
    std::vector<Task> path;
    CostParams params;

    Vec2 predecessor_position(std::size_t slot) const;
    double predecessor_time(std::size_t slot) const;
    std::vector<double> completion_times() const;
};

// ||lambda_j - pred|| + eta * ||lambda_j - I_j||
double spatial_loss(const PathContext& ctx, const Task& task, std::size_t slot);

// Positive slack after the predecessor's completion, and the leg is
// reachable at max speed strictly within it.
bool feasible(const PathContext& ctx, const Task& task, std::size_t slot);

// t_j * (t_j - t_pred) in the configured time origin, or kInfeasible.
double temporal_loss(const PathContext& ctx, const Task& task, std::size_t slot);

// spatial * temporal; kInfeasible whenever the leg is infeasible.
double composite_loss(const PathContext& ctx, const Task& task, std::size_t slot);

// Sum of composite losses along ctx.path; 0 for an empty path.
double path_loss(const PathContext& ctx);

struct InsertionCost {
    double cost = kInfeasible;
    std::size_t slot = 0;  // meaningful only when cost is finite
};

// Cheapest increase in path loss over every insertion slot 0..|path|, with
// the lowest slot winning ties. Infinite when the task is already on the
// path, when the base path is infeasible, or when every slot is infeasible.
InsertionCost marginal_insertion_cost(const PathContext& ctx, const Task& task);

bool path_contains(std::span<const Task> path, TaskId id);

}  // namespace pdef
