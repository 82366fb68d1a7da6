#pragma once

#include <cstddef>
#include <cstdint>

#include "pdef/oracle.hpp"
#include "pdef/rng.hpp"

namespace pdef {

// Random single-snapshot allocation problems on a square territory.
struct InstanceSpec {
    int min_defenders = 2;
    int max_defenders = 4;
    int min_tasks = 1;
    int max_tasks = 6;
    double half_width = 50.0;            // territory is [-w, w]^2
    double spawn_radius_min = 75.0;      // intruder distance from the center
    double spawn_radius_max = 130.0;
    double intruder_speed = 3.0;
    double defender_max_speed = 4.5;
    double eta = 0.5;
    double observe_probability = 0.6;    // ignored when full_observability
    bool full_observability = false;
};

// Every task is observed by at least one defender. Task ids are 0..M-1 and
// defender ids 0..N-1. The planning time is 0.
AllocationInstance random_instance(Rng& rng, const InstanceSpec& spec);

// N defenders spread inside a regular polygon facing N intruders, one per
// defender sector, all observed by everyone.
AllocationInstance one_to_one_instance(int n, std::uint64_t seed);

}  // namespace pdef
