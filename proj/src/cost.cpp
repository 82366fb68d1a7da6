#include "pdef/cost.hpp"

#include <algorithm>
#include <stdexcept>

namespace pdef {

Vec2 PathContext::predecessor_position(std::size_t slot) const {
    if (slot > path.size()) throw std::out_of_range("insertion slot beyond path end");
    return slot == 0 ? start_position : path[slot - 1].lambda.position;
}

double PathContext::predecessor_time(std::size_t slot) const {
    if (slot > path.size()) throw std::out_of_range("insertion slot beyond path end");
    return slot == 0 ? start_time : path[slot - 1].arrival_time;
}

std::vector<double> PathContext::completion_times() const {
    std::vector<double> out;
    out.reserve(path.size());
    for (const Task& t : path) out.push_back(t.arrival_time);
    return out;
}

double spatial_loss(const PathContext& ctx, const Task& task, std::size_t slot) {
    return distance(task.lambda.position, ctx.predecessor_position(slot)) +
           ctx.params.eta * distance(task.lambda.position, task.intruder_position);
}

bool feasible(const PathContext& ctx, const Task& task, std::size_t slot) {
    const double slack = task.arrival_time - ctx.predecessor_time(slot);
    if (!(slack > 0.0)) return false;
    const double travel = distance(task.lambda.position, ctx.predecessor_position(slot));
    return travel / ctx.params.max_speed < slack;
}

double temporal_loss(const PathContext& ctx, const Task& task, std::size_t slot) {
    if (!feasible(ctx, task, slot)) return kInfeasible;
    if (ctx.params.origin == TimeOrigin::planning_time) {
        const double deadline = task.arrival_time - ctx.start_time;
        const double previous = ctx.predecessor_time(slot) - ctx.start_time;
        return deadline * (deadline - previous);
    }
    const double previous = slot == 0 ? 0.0 : ctx.predecessor_time(slot);
    return task.arrival_time * (task.arrival_time - previous);
}

double composite_loss(const PathContext& ctx, const Task& task, std::size_t slot) {
    const double temporal = temporal_loss(ctx, task, slot);
    // 0 * inf would be NaN; an infeasible leg is infeasible regardless.
    if (!is_feasible_loss(temporal)) return kInfeasible;
    return spatial_loss(ctx, task, slot) * temporal;
}

double path_loss(const PathContext& ctx) {
    double total = 0.0;
    for (std::size_t k = 0; k < ctx.path.size(); ++k) {
        const double leg = composite_loss(ctx, ctx.path[k], k);
        if (!is_feasible_loss(leg)) return kInfeasible;
        total += leg;
    }
    return total;
}

bool path_contains(std::span<const Task> path, TaskId id) {
    return std::any_of(path.begin(), path.end(), [id](const Task& t) { return t.id == id; });
}

InsertionCost marginal_insertion_cost(const PathContext& ctx, const Task& task) {
    InsertionCost best;
    if (path_contains(ctx.path, task.id)) return best;
    const double base = path_loss(ctx);
    if (!is_feasible_loss(base)) return best;

    PathContext candidate = ctx;
    candidate.path.insert(candidate.path.begin(), task);
    for (std::size_t slot = 0; slot <= ctx.path.size(); ++slot) {
        if (slot > 0) std::swap(candidate.path[slot - 1], candidate.path[slot]);
        const double loss = path_loss(candidate);
        if (!is_feasible_loss(loss)) continue;
        const double delta = loss - base;
        if (delta < best.cost) {
            best.cost = delta;
            best.slot = slot;
        }
    }
    return best;
}

}  // namespace pdef
