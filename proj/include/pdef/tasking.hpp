#pragma once

#include <optional>
#include <vector>

#include "pdef/sensing.hpp"

namespace pdef {

// Spatio-temporal neutralization task: be at `lambda` at `arrival_time`.
struct Task {
    TaskId id{};
    PerimeterPoint lambda;
    double arrival_time = 0.0;  // absolute simulation time, s
    Vec2 intruder_position;
    double intruder_speed = 0.0;
};

// Predicted intrusion point and absolute arrival time of an active intruder,
// or nullopt when its heading ray misses the territory.
// Throws std::invalid_argument when the intruder speed is not positive.
std::optional<Task> make_task(const IntruderState& intruder, const Territory& territory,
                              double now);

// Per-defender task lists (same order as `observations`), recomputed from the
// current intruder states. Task ids follow intruder ids.
std::vector<std::vector<Task>> refresh_tasks(const std::vector<ObservationSet>& observations,
                                             const WorldState& world);

}  // namespace pdef
