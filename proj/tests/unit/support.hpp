#pragma once

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "pdef/geometry.hpp"
#include "pdef/tasking.hpp"

namespace pdef::test {

inline Territory square(double half = 50.0) {
    return Territory({{half, -half}, {half, half}, {-half, half}, {-half, -half}});
}

// Relative comparison pinned at 1e-9.
inline bool close(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// A task built by hand, bypassing ray casting.
inline Task task_at(int id, Vec2 lambda, double arrival, Vec2 intruder, double speed = 3.0) {
    Task t;
    t.id = TaskId{id};
    t.lambda.position = lambda;
    t.arrival_time = arrival;
    t.intruder_position = intruder;
    t.intruder_speed = speed;
    return t;
}

}  // namespace pdef::test
