#include <algorithm>
#include <vector>

#include "support.hpp"

#include "pdef/instances.hpp"
#include "pdef/oracle.hpp"

using namespace pdef;
using pdef::test::close;
using pdef::test::task_at;

namespace {

AllocationInstance instance(std::vector<Vec2> defenders, std::vector<Task> tasks) {
    AllocationInstance inst;
    inst.cost = {0.5, 4.5, TimeOrigin::planning_time};
    for (std::size_t d = 0; d < defenders.size(); ++d) {
        inst.defenders.push_back({AgentId{static_cast<int>(d)}, defenders[d]});
    }
    inst.tasks = std::move(tasks);
    inst.observes.assign(defenders.size(), std::vector<bool>(inst.tasks.size(), true));
    return inst;
}

}  // namespace

TEST_CASE("one defender, one task") {
    const auto inst = instance({{26, 0}}, {task_at(0, {50, 0}, 10, {80, 0})});
    const ExactSolution s = brute_force_min_cost(inst);
    CHECK(s.objective.assigned == 1);
    CHECK(close(s.objective.cost, 3900.0));
    CHECK(s.enumeration_count == 2);
}

TEST_CASE("symmetric two by two pairs each defender with its own side") {
    const auto inst = instance({{30, 0}, {-30, 0}},
                               {task_at(0, {50, 0}, 10, {80, 0}), task_at(1, {-50, 0}, 10, {-80, 0})});
    const ExactSolution s = brute_force_min_cost(inst);
    CHECK(s.objective.assigned == 2);
    CHECK(s.assignment.winner_of(TaskId{0}) == AgentId{0});
    CHECK(s.assignment.winner_of(TaskId{1}) == AgentId{1});
    CHECK(close(s.objective.cost, 2.0 * (20.0 + 15.0) * 100.0));
}

TEST_CASE("one-to-one optimum matches an enumeration of the 3! matchings") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vec2> defenders;
        std::vector<Task> tasks;
        for (int k = 0; k < 3; ++k) {
            defenders.push_back({rng.uniform(-20, 20), rng.uniform(-20, 20)});
            const double a = rng.uniform(0, kTwoPi);
            const Vec2 lambda{50 * std::cos(a), 50 * std::sin(a)};
            tasks.push_back(task_at(k, lambda, 20 + rng.uniform(0, 5), lambda * 1.4));
        }
        const auto inst = instance(defenders, tasks);
        std::vector<int> perm{0, 1, 2};
        double best = kInfeasible;
        do {
            double total = 0.0;
            for (int d = 0; d < 3; ++d) {
                PathContext ctx = inst.empty_context(static_cast<std::size_t>(d));
                ctx.path.push_back(tasks[static_cast<std::size_t>(perm[static_cast<std::size_t>(d)])]);
                total += path_loss(ctx);
            }
            best = std::min(best, total);
        } while (std::next_permutation(perm.begin(), perm.end()));
        REQUIRE(best < kInfeasible);
        const ExactSolution s = brute_force_min_cost(inst);
        CHECK(s.objective.assigned == 3);
        // Multi-task paths may only do better than the matching.
        CHECK(s.objective.cost <= best * (1 + 1e-9));
    }
}

TEST_CASE("greedy commits the globally cheapest insertion first") {
    const auto inst = instance({{26, 0}, {13, 0}}, {task_at(0, {50, 0}, 10, {80, 0})});
    const Assignment g = greedy_matching(inst);
    CHECK(g.winner_of(TaskId{0}) == AgentId{0});
    CHECK(g.paths.at(AgentId{1}).empty());
}

TEST_CASE("all-infeasible instances assign nothing") {
    const auto inst = instance({{-40, 0}}, {task_at(0, {50, 0}, 2, {56, 0})});
    const ExactSolution s = brute_force_min_cost(inst);
    CHECK(s.objective.assigned == 0);
    CHECK(s.objective.cost == 0.0);
    CHECK(greedy_matching(inst).winners.empty());
}

TEST_CASE("oracle bounds are enforced") {
    std::vector<Task> seven;
    for (int k = 0; k < 7; ++k) seven.push_back(task_at(k, {50, 0}, 10, {80, 0}));
    CHECK_THROWS_AS(brute_force_min_cost(instance({{0, 0}}, seven)), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_min_cost(instance({{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}, {})),
                    std::invalid_argument);
}

TEST_CASE("constraint checker counts each kind of violation") {
    auto inst = instance({{26, 0}, {13, 0}}, {task_at(0, {50, 0}, 10, {80, 0})});
    inst.observes[1][0] = false;
    Assignment bad;
    bad.paths[AgentId{0}] = {TaskId{0}};
    bad.paths[AgentId{1}] = {TaskId{0}};
    bad.winners[TaskId{0}] = AgentId{0};
    const ConstraintReport r = check_constraints(inst, bad);
    CHECK(r.duplicate_assignments == 1);
    CHECK(r.unobserved_assignments == 1);
    CHECK(r.inconsistent_winners == 1);
    CHECK_FALSE(r.ok());
}

TEST_CASE("property: exact optimum is never beaten by greedy") {
    Rng rng(13);
    for (int k = 0; k < 200; ++k) {
        InstanceSpec spec;
        spec.max_tasks = 5;
        const AllocationInstance inst = random_instance(rng, spec);
        const Objective opt = brute_force_min_cost(inst).objective;
        const Objective g = evaluate(inst, greedy_matching(inst));
        CHECK(check_constraints(inst, greedy_matching(inst)).ok());
        const bool greedy_better =
            g.assigned > opt.assigned ||
            (g.assigned == opt.assigned && g.cost < opt.cost - 1e-9 * std::max(1.0, opt.cost));
        CHECK_FALSE(greedy_better);
    }
}
