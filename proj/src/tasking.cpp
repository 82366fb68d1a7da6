#include "pdef/tasking.hpp"

#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace pdef {

std::optional<Task> make_task(const IntruderState& intruder, const Territory& territory,
                              double now) {
    if (!(intruder.speed > 0.0)) {
        throw std::invalid_argument(
            fmt::format("intruder {} has non-positive speed {}", to_int(intruder.id), intruder.speed));
    }
    if (intruder.status != IntruderStatus::active || territory.contains(intruder.position)) {
        return std::nullopt;
    }
    const auto lambda = territory.ray_boundary_intersection(intruder.position, intruder.heading);
    if (!lambda) return std::nullopt;
    Task t;
    t.id = intruder.id;
    t.lambda = *lambda;
    t.arrival_time = now + distance(intruder.position, lambda->position) / intruder.speed;
    t.intruder_position = intruder.position;
    t.intruder_speed = intruder.speed;
    return t;
}

std::vector<std::vector<Task>> refresh_tasks(const std::vector<ObservationSet>& observations,
                                             const WorldState& world) {
    std::map<IntruderId, const IntruderState*> by_id;
    for (const IntruderState& in : world.intruders) by_id.emplace(in.id, &in);

    // Each intruder's task is computed once and shared by every observer.
    std::map<IntruderId, std::optional<Task>> cache;
    std::vector<std::vector<Task>> out(observations.size());
    for (std::size_t i = 0; i < observations.size(); ++i) {
        for (IntruderId id : observations[i].observed_intruder_ids) {
            auto it = cache.find(id);
            if (it == cache.end()) {
                const auto found = by_id.find(id);
                std::optional<Task> task;
                if (found != by_id.end()) task = make_task(*found->second, world.territory, world.time);
                it = cache.emplace(id, std::move(task)).first;
            }
            if (it->second) out[i].push_back(*it->second);
        }
    }
    return out;
}

}  // namespace pdef
