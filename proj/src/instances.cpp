#include "pdef/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pdef/tasking.hpp"

namespace pdef {

namespace {

int uniform_int(Rng& rng, int lo, int hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    return lo + std::min(hi - lo, static_cast<int>(rng.uniform() * span));
}

// An intruder at `position` heading for `aim`, turned into a task at time 0.
std::optional<Task> aimed_task(const Territory& territory, TaskId id, Vec2 position, Vec2 aim,
                               double speed) {
    IntruderState in;
    in.id = id;
    in.position = position;
    in.previous_position = position;
    in.speed = speed;
    const Vec2 d = aim - position;
    in.heading = wrap_angle(std::atan2(d.y, d.x));
    return make_task(in, territory, 0.0);
}

}  // namespace

AllocationInstance random_instance(Rng& rng, const InstanceSpec& spec) {
    if (spec.min_defenders < 1 || spec.max_defenders < spec.min_defenders ||
        spec.min_tasks < 0 || spec.max_tasks < spec.min_tasks) {
        throw std::invalid_argument("instance spec: bad defender or task count range");
    }
    const double w = spec.half_width;
    const Territory territory({{-w, -w}, {w, -w}, {w, w}, {-w, w}});

    AllocationInstance out;
    out.cost = {spec.eta, spec.defender_max_speed, TimeOrigin::planning_time};
    const int n = uniform_int(rng, spec.min_defenders, spec.max_defenders);
    const int m = uniform_int(rng, spec.min_tasks, spec.max_tasks);
    for (int i = 0; i < n; ++i) {
        out.defenders.push_back({AgentId{i}, {rng.uniform(-w, w), rng.uniform(-w, w)}});
    }
    while (static_cast<int>(out.tasks.size()) < m) {
        const double r = rng.uniform(spec.spawn_radius_min, spec.spawn_radius_max);
        const double a = rng.uniform(0.0, kTwoPi);
        const Vec2 start{r * std::cos(a), r * std::sin(a)};
        const PerimeterPoint aim =
            territory.perimeter_point_from_arclength(rng.uniform(0.0, territory.perimeter_length()));
        const TaskId id{static_cast<int>(out.tasks.size())};
        if (auto task = aimed_task(territory, id, start, aim.position, spec.intruder_speed)) {
            out.tasks.push_back(*task);
        }
    }
    out.observes.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(m)));
    for (int t = 0; t < m; ++t) {
        bool seen = false;
        for (int d = 0; d < n; ++d) {
            const bool sees = spec.full_observability || rng.uniform() < spec.observe_probability;
            out.observes[d][t] = sees;
            seen = seen || sees;
        }
        if (!seen) out.observes[uniform_int(rng, 0, n - 1)][t] = true;
    }
    return out;
}

AllocationInstance one_to_one_instance(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("one_to_one_instance: n must be positive");
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(n)));
    const Territory territory = Territory::regular_polygon({0.0, 0.0}, 50.0, 8, 0.0);

    AllocationInstance out;
    out.cost = {0.5, 4.5, TimeOrigin::planning_time};
    const double sector = kTwoPi / n;
    for (int i = 0; i < n; ++i) {
        const double a = sector * (i + rng.uniform(0.25, 0.75));
        const double r = rng.uniform(10.0, 30.0);
        out.defenders.push_back({AgentId{i}, {r * std::cos(a), r * std::sin(a)}});
    }
    for (int j = 0; j < n; ++j) {
        const double a = sector * (j + rng.uniform(0.25, 0.75));
        const double r = rng.uniform(90.0, 110.0);
        const Vec2 start{r * std::cos(a), r * std::sin(a)};
        const Vec2 aim{40.0 * std::cos(a + rng.uniform(-0.2, 0.2)),
                       40.0 * std::sin(a + rng.uniform(-0.2, 0.2))};
        auto task = aimed_task(territory, TaskId{j}, start, aim, 3.0);
        if (!task) throw std::logic_error("one_to_one_instance: intruder aimed off the territory");
        out.tasks.push_back(*task);
    }
    out.observes.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), true));
    return out;
}

}  // namespace pdef
