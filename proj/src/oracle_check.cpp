#include "pdef/oracle_check.hpp"

#include <algorithm>
#include <cmath>

#include "pdef/instances.hpp"
#include "pdef/parallel.hpp"

namespace pdef {

namespace {

bool same_objective(const Objective& a, const Objective& b) {
    return a.assigned == b.assigned &&
           std::abs(a.cost - b.cost) <= 1e-9 * std::max(1.0, std::abs(b.cost));
}

// Lexicographic: more tasks first, then lower cost beyond a relative 1e-9.
bool strictly_better(const Objective& a, const Objective& b) {
    if (a.assigned != b.assigned) return a.assigned > b.assigned;
    return a.cost < b.cost - 1e-9 * std::max(1.0, std::abs(b.cost));
}

OracleCheckCase check_one(std::uint64_t seed, bool subclass) {
    Rng rng(seed);
    InstanceSpec spec;
    spec.min_defenders = 1;
    spec.max_defenders = static_cast<int>(kOracleMaxDefenders);
    spec.max_tasks = static_cast<int>(kOracleMaxTasks);
    spec.full_observability = subclass;
    const AllocationInstance inst = random_instance(rng, spec);
    const std::size_t cap = subclass ? 1 : std::numeric_limits<std::size_t>::max();

    OracleCheckCase out;
    out.seed = seed;
    out.defenders = static_cast<int>(inst.defenders.size());
    out.tasks = static_cast<int>(inst.tasks.size());
    out.single_task_subclass = subclass;

    const auto agents = inst.agent_inputs();
    SyncBus bus;
    Assignment engine;
    try {
        engine = allocation_round(agents, {inst.now, inst.cost, cap}, bus).assignment;
    } catch (const ConsensusError&) {
        out.converged = false;
        return out;
    }
    out.constraints = check_constraints(inst, engine);
    out.engine = evaluate(inst, engine);

    const Assignment greedy = greedy_matching(inst, cap);
    out.greedy = evaluate(inst, greedy);
    out.engine_within_greedy = !strictly_better(out.greedy, out.engine);

    // Capped or not, the engine's assignment is one of the enumerated configurations.
    out.optimum = brute_force_min_cost(inst).objective;
    out.engine_below_optimum = strictly_better(out.engine, out.optimum);
    if (subclass) out.matches_greedy = engine.winners == greedy.winners && engine.paths == greedy.paths;
    return out;
}

}  // namespace

OracleCheckReport run_oracle_check(const OracleCheckOptions& options) {
    OracleCheckReport report;
    report.cases.resize(static_cast<std::size_t>(std::max(0, options.runs)));
    parallel_for(report.cases.size(), options.threads, [&](std::size_t k) {
        report.cases[k] = check_one(mix_seed(options.seed, k), k % 4 == 3);
    });
    for (const OracleCheckCase& c : report.cases) {
        if (!c.converged) {
            ++report.non_converged;
            continue;
        }
        const ConstraintReport& v = c.constraints;
        report.violations += v.duplicate_assignments + v.unobserved_assignments +
                             v.infeasible_paths + v.inconsistent_winners;
        report.below_optimum += c.engine_below_optimum ? 1 : 0;
        report.within_greedy += c.engine_within_greedy ? 1 : 0;
        if (c.single_task_subclass) {
            ++report.subclass_cases;
            report.subclass_greedy_matches += c.matches_greedy ? 1 : 0;
        } else {
            report.optimal_cases += same_objective(c.engine, c.optimum) ? 1 : 0;
            if (c.engine.assigned == c.optimum.assigned && c.optimum.cost > 0.0) {
                report.worst_cost_ratio =
                    std::max(report.worst_cost_ratio, c.engine.cost / c.optimum.cost);
            }
        }
    }
    return report;
}

}  // namespace pdef
