#include "pdef/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace pdef {

std::vector<AgentInput> AllocationInstance::agent_inputs() const {
    std::vector<AgentInput> out;
    out.reserve(defenders.size());
    for (std::size_t d = 0; d < defenders.size(); ++d) {
        AgentInput in{defenders[d].id, defenders[d].position, {}};
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            if (observes[d][t]) in.observed.push_back(tasks[t]);
        }
        out.push_back(std::move(in));
    }
    return out;
}

PathContext AllocationInstance::empty_context(std::size_t defender) const {
    PathContext ctx;
    ctx.defender = defenders[defender].id;
    ctx.start_position = defenders[defender].position;
    ctx.start_time = now;
    ctx.params = cost;
    return ctx;
}

namespace {

const Task& task_by_id(const AllocationInstance& instance, TaskId id) {
    for (const Task& t : instance.tasks) {
        if (t.id == id) return t;
    }
    throw std::invalid_argument(fmt::format("assignment names unknown task {}", to_int(id)));
}

std::size_t defender_index(const AllocationInstance& instance, AgentId id) {
    for (std::size_t d = 0; d < instance.defenders.size(); ++d) {
        if (instance.defenders[d].id == id) return d;
    }
    throw std::invalid_argument(fmt::format("assignment names unknown defender {}", to_int(id)));
}

std::size_t task_index(const AllocationInstance& instance, TaskId id) {
    for (std::size_t t = 0; t < instance.tasks.size(); ++t) {
        if (instance.tasks[t].id == id) return t;
    }
    throw std::invalid_argument(fmt::format("assignment names unknown task {}", to_int(id)));
}

bool better(const Objective& a, const Objective& b) {
    if (a.assigned != b.assigned) return a.assigned > b.assigned;
    return a.cost < b.cost - 1e-9 * std::max(1.0, std::abs(b.cost));
}

}  // namespace

Objective evaluate(const AllocationInstance& instance, const Assignment& assignment) {
    Objective out;
    for (const auto& [agent, path] : assignment.paths) {
        PathContext ctx = instance.empty_context(defender_index(instance, agent));
        for (TaskId id : path) ctx.path.push_back(task_by_id(instance, id));
        out.assigned += static_cast<int>(path.size());
        out.cost += path_loss(ctx);
    }
    return out;
}

ConstraintReport check_constraints(const AllocationInstance& instance,
                                   const Assignment& assignment) {
    ConstraintReport report;
    std::map<TaskId, int> holders;
    for (const auto& [agent, path] : assignment.paths) {
        const std::size_t d = defender_index(instance, agent);
        PathContext ctx = instance.empty_context(d);
        for (TaskId id : path) {
            ++holders[id];
            if (!instance.observes[d][task_index(instance, id)]) ++report.unobserved_assignments;
            if (assignment.winner_of(id) != agent) ++report.inconsistent_winners;
            ctx.path.push_back(task_by_id(instance, id));
        }
        if (!is_feasible_loss(path_loss(ctx))) ++report.infeasible_paths;
    }
    for (const auto& [id, count] : holders) {
        if (count > 1) report.duplicate_assignments += count - 1;
    }
    for (const auto& [id, agent] : assignment.winners) {
        if (holders.find(id) == holders.end()) ++report.inconsistent_winners;
    }
    return report;
}

namespace {

class Enumerator {
public:
    explicit Enumerator(const AllocationInstance& instance)
        : instance_(instance), sequences_(instance.defenders.size()) {}

    ExactSolution run() {
        recurse(0);
        return std::move(best_);
    }

private:
    void recurse(std::size_t t) {
        if (t == instance_.tasks.size()) {
            leaf();
            return;
        }
        for (std::size_t d = 0; d < instance_.defenders.size(); ++d) {
            if (!instance_.observes[d][t]) continue;
            auto& seq = sequences_[d];
            for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
                seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos), t);
                recurse(t + 1);
                seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(pos));
            }
        }
        recurse(t + 1);  // leave task t unassigned
    }

    void leaf() {
        ++best_.enumeration_count;
        Objective value;
        for (std::size_t d = 0; d < sequences_.size(); ++d) {
            PathContext ctx = instance_.empty_context(d);
            for (std::size_t t : sequences_[d]) ctx.path.push_back(instance_.tasks[t]);
            const double loss = path_loss(ctx);
            if (!is_feasible_loss(loss)) return;
            value.cost += loss;
            value.assigned += static_cast<int>(sequences_[d].size());
        }
        if (found_ && !better(value, best_.objective)) return;
        found_ = true;
        best_.objective = value;
        best_.assignment = Assignment{};
        for (std::size_t d = 0; d < sequences_.size(); ++d) {
            auto& path = best_.assignment.paths[instance_.defenders[d].id];
            for (std::size_t t : sequences_[d]) {
                path.push_back(instance_.tasks[t].id);
                best_.assignment.winners[instance_.tasks[t].id] = instance_.defenders[d].id;
            }
        }
    }

    const AllocationInstance& instance_;
    std::vector<std::vector<std::size_t>> sequences_;
    ExactSolution best_;
    bool found_ = false;
};

}  // namespace

ExactSolution brute_force_min_cost(const AllocationInstance& instance) {
    if (instance.defenders.size() > kOracleMaxDefenders || instance.tasks.size() > kOracleMaxTasks) {
        throw std::invalid_argument(fmt::format(
            "oracle bound exceeded: {} defenders, {} tasks (max {} and {})",
            instance.defenders.size(), instance.tasks.size(), kOracleMaxDefenders, kOracleMaxTasks));
    }
    return Enumerator(instance).run();
}

Assignment greedy_matching(const AllocationInstance& instance,
                           std::size_t max_tasks_per_defender) {
    std::vector<PathContext> contexts;
    for (std::size_t d = 0; d < instance.defenders.size(); ++d) {
        contexts.push_back(instance.empty_context(d));
    }
    std::vector<bool> taken(instance.tasks.size(), false);

    Assignment out;
    for (const DefenderSpec& d : instance.defenders) out.paths[d.id];

    while (true) {
        double best_cost = kInfeasible;
        std::size_t best_d = 0;
        std::size_t best_t = 0;
        std::size_t best_slot = 0;
        for (std::size_t d = 0; d < instance.defenders.size(); ++d) {
            if (contexts[d].path.size() >= max_tasks_per_defender) continue;
            for (std::size_t t = 0; t < instance.tasks.size(); ++t) {
                if (taken[t] || !instance.observes[d][t]) continue;
                const InsertionCost c = marginal_insertion_cost(contexts[d], instance.tasks[t]);
                if (!is_feasible_loss(c.cost)) continue;
                const bool wins =
                    c.cost < best_cost ||
                    (c.cost == best_cost &&
                     (instance.defenders[d].id < instance.defenders[best_d].id ||
                      (d == best_d && instance.tasks[t].id < instance.tasks[best_t].id)));
                if (wins) {
                    best_cost = c.cost;
                    best_d = d;
                    best_t = t;
                    best_slot = c.slot;
                }
            }
        }
        if (!is_feasible_loss(best_cost)) break;
        taken[best_t] = true;
        auto& path = contexts[best_d].path;
        path.insert(path.begin() + static_cast<std::ptrdiff_t>(best_slot), instance.tasks[best_t]);
        out.winners[instance.tasks[best_t].id] = instance.defenders[best_d].id;
    }
    for (std::size_t d = 0; d < contexts.size(); ++d) {
        auto& path = out.paths[instance.defenders[d].id];
        for (const Task& t : contexts[d].path) path.push_back(t.id);
    }
    return out;
}

}  // namespace pdef
