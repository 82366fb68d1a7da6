#pragma once

#include <vector>

#include "pdef/world.hpp"

namespace pdef {

// Active intruders within a defender's sensing disk at one instant.
struct ObservationSet {
    AgentId defender_id{};
    std::vector<IntruderId> observed_intruder_ids;  // ascending
    double snapshot_time = 0.0;
    double sensing_radius = 0.0;
};

// Boolean-disk, noise-free detection; distance <= sensing_radius counts.
// Throws std::invalid_argument unless sensing_radius > 0.
ObservationSet observe(const DefenderState& defender, const WorldState& world,
                       double sensing_radius);

std::vector<ObservationSet> observe_all(const WorldState& world, double sensing_radius);

}  // namespace pdef
