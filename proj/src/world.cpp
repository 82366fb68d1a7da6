#include "pdef/world.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace pdef {

int WorldState::active_count() const {
    return static_cast<int>(std::count_if(intruders.begin(), intruders.end(), [](const auto& in) {
        return in.status == IntruderStatus::active;
    }));
}

namespace {

bool aims_at(const Territory& territory, Vec2 position, double heading) {
    return territory.ray_boundary_intersection(position, heading).has_value();
}

}  // namespace

double perturb_heading(const Territory& territory, Vec2 position, double heading, double turn) {
    const double turned = wrap_angle(heading + turn);
    if (territory.contains(position) || !aims_at(territory, position, heading)) return turned;
    if (aims_at(territory, position, turned)) return turned;
    const double mirrored = wrap_angle(heading - turn);
    if (aims_at(territory, position, mirrored)) return mirrored;
    return heading;
}

void step_agents(WorldState& world, std::span<const DefenderControl> controls, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument(fmt::format("dt must be positive, got {}", dt));
    if (controls.size() != world.defenders.size()) {
        throw std::invalid_argument(fmt::format("{} controls for {} defenders", controls.size(),
                                                world.defenders.size()));
    }
    for (std::size_t i = 0; i < controls.size(); ++i) {
        const DefenderState& d = world.defenders[i];
        if (controls[i].speed < 0.0 || controls[i].speed > d.max_speed) {
            throw std::invalid_argument(fmt::format("defender {} commanded speed {} outside [0, {}]",
                                                    to_int(d.id), controls[i].speed, d.max_speed));
        }
    }

    for (std::size_t i = 0; i < controls.size(); ++i) {
        DefenderState& d = world.defenders[i];
        d.speed = controls[i].speed;
        d.heading = wrap_angle(controls[i].heading);
        const Vec2 target = d.position + (d.speed * dt) * unit_vector(d.heading);
        d.position = world.territory.clip_segment(d.position, target);
    }

    for (IntruderState& in : world.intruders) {
        if (in.status != IntruderStatus::active) continue;
        in.previous_position = in.position;
        in.position = in.position + (in.speed * dt) * unit_vector(in.heading);
        if (in.heading_rate_limit > 0.0) {
            const double bound = in.heading_rate_limit * dt;
            const double turn = world.heading_noise.uniform(-bound, bound);
            in.heading = perturb_heading(world.territory, in.position, in.heading, turn);
        }
    }
    world.time += dt;
}

std::vector<CaptureEvent> check_captures(WorldState& world) {
    std::vector<CaptureEvent> events;
    for (IntruderState& in : world.intruders) {
        if (in.status != IntruderStatus::active) continue;
        if (world.territory.contains(in.position)) continue;
        const DefenderState* nearest = nullptr;
        double best = std::numeric_limits<double>::infinity();
        for (const DefenderState& d : world.defenders) {
            const double r = distance(in.position, d.position);
            if (r < best) {
                best = r;
                nearest = &d;
            }
        }
        if (nearest != nullptr && best <= world.capture_radius) {
            in.status = IntruderStatus::captured;
            events.push_back({in.id, nearest->id, world.time, in.position});
        }
    }
    return events;
}

std::vector<IntrusionEvent> check_intrusions(WorldState& world) {
    std::vector<IntrusionEvent> events;
    for (IntruderState& in : world.intruders) {
        if (in.status != IntruderStatus::active) continue;
        if (!world.territory.contains(in.position)) continue;
        in.status = IntruderStatus::intruded;
        Vec2 crossing = in.position;
        const Vec2 motion = in.position - in.previous_position;
        if (norm(motion) > 0.0 && !world.territory.contains(in.previous_position)) {
            const auto hit = world.territory.ray_boundary_intersection(
                in.previous_position, std::atan2(motion.y, motion.x));
            if (hit) crossing = hit->position;
        }
        events.push_back({in.id, world.time, crossing});
    }
    return events;
}

void validate(const SpawnSchedule& s, const Territory& territory) {
    const auto fail = [](std::string msg) { throw std::invalid_argument("spawn schedule: " + msg); };
    if (s.total < 0) fail("total must be non-negative");
    if (!s.explicit_spawns.empty() && static_cast<std::size_t>(s.total) != s.explicit_spawns.size()) {
        fail(fmt::format("total {} does not match {} explicit spawns", s.total,
                         s.explicit_spawns.size()));
    }
    if (s.total > 0 && s.max_concurrent < 1) fail("max_concurrent must be at least 1");
    if (!(s.speed > 0.0)) fail("intruder speed must be positive");
    if (s.heading_rate_limit < 0.0) fail("heading_rate_limit must be non-negative");
    if (s.min_separation < 0.0) fail("min_separation must be non-negative");
    if (s.mean_interval < 0.0) fail("mean_interval must be non-negative");
    if (s.explicit_spawns.empty() && s.total > 0) {
        if (!(s.spawn_radius_min > territory.max_radius())) {
            fail(fmt::format("spawn_radius_min {} must exceed the territory radius {}",
                             s.spawn_radius_min, territory.max_radius()));
        }
        if (s.spawn_radius_max < s.spawn_radius_min) fail("spawn radius range is inverted");
    }
    for (const ExplicitSpawn& e : s.explicit_spawns) {
        if (territory.contains(e.position)) {
            fail(fmt::format("explicit spawn at ({}, {}) is inside the territory", e.position.x,
                             e.position.y));
        }
        if (e.time < 0.0) fail("explicit spawn time must be non-negative");
    }
}

SpawnScheduler::SpawnScheduler(SpawnSchedule schedule, const Territory& territory,
                               std::uint64_t seed)
    : schedule_(std::move(schedule)) {
    validate(schedule_, territory);
    if (!schedule_.explicit_spawns.empty()) {
        for (const ExplicitSpawn& e : schedule_.explicit_spawns) {
            candidates_.push_back({e.time, e.position, wrap_angle(e.heading)});
        }
        std::stable_sort(candidates_.begin(), candidates_.end(),
                         [](const auto& a, const auto& b) { return a.earliest < b.earliest; });
        return;
    }

    Rng rng(mix_seed(seed, 2));
    const Vec2 c = territory.centroid();
    double t = 0.0;
    for (int k = 0; k < schedule_.total; ++k) {
        if (k > 0) t += schedule_.mean_interval * rng.uniform(0.5, 1.5);
        const double bearing = rng.uniform(0.0, kTwoPi);
        const double radius = rng.uniform(schedule_.spawn_radius_min, schedule_.spawn_radius_max);
        const Vec2 position = c + radius * unit_vector(bearing);
        const double s = rng.uniform(0.0, territory.perimeter_length());
        const Vec2 aim = territory.perimeter_point_from_arclength(s).position;
        const Vec2 d = aim - position;
        candidates_.push_back({t, position, wrap_angle(std::atan2(d.y, d.x))});
    }
}

std::vector<IntruderState> SpawnScheduler::release(double now, int active_count,
                                                   const Territory& territory) {
    constexpr double kTimeSlack = 1e-9;
    std::vector<IntruderState> out;
    while (!exhausted()) {
        Candidate& c = candidates_[next_];
        if (now + kTimeSlack < c.earliest) break;
        if (active_count + static_cast<int>(out.size()) >= schedule_.max_concurrent) break;

        const auto hit = territory.ray_boundary_intersection(c.position, c.heading);
        if (hit) {
            const double arrival = now + distance(c.position, hit->position) / schedule_.speed;
            double shifted = arrival;
            for (double a : predicted_arrivals_) {
                if (std::abs(shifted - a) < schedule_.min_separation - kTimeSlack) {
                    shifted = a + schedule_.min_separation;
                }
            }
            if (shifted > arrival + kTimeSlack) {
                c.earliest = now + (shifted - arrival);
                break;
            }
            predicted_arrivals_.insert(
                std::upper_bound(predicted_arrivals_.begin(), predicted_arrivals_.end(), arrival),
                arrival);
        }

        IntruderState in;
        in.id = IntruderId{static_cast<int>(next_)};
        in.position = c.position;
        in.previous_position = c.position;
        in.speed = schedule_.speed;
        in.heading = c.heading;
        in.heading_rate_limit = schedule_.heading_rate_limit;
        in.spawn_time = now;
        out.push_back(in);
        ++next_;
    }
    return out;
}

void spawn_intruders(WorldState& world, SpawnScheduler& scheduler) {
    auto fresh = scheduler.release(world.time, world.active_count(), world.territory);
    for (auto& in : fresh) world.intruders.push_back(std::move(in));
}

}  // namespace pdef
