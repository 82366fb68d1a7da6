#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pdef/geometry.hpp"
#include "pdef/ids.hpp"
#include "pdef/rng.hpp"

namespace pdef {

using IntruderId = TaskId;

struct DefenderState {
    AgentId id{};
    Vec2 position;
    double speed = 0.0;    // m/s, last commanded
    double heading = 0.0;  // rad, [0, 2pi)
    double max_speed = 0.0;
};

enum class IntruderStatus { active, captured, intruded };

struct IntruderState {
    IntruderId id{};
    Vec2 position;
    Vec2 previous_position;
    double speed = 0.0;               // constant over the intruder's lifetime
    double heading = 0.0;
    double heading_rate_limit = 0.0;  // delta, rad/s
    double spawn_time = 0.0;
    IntruderStatus status = IntruderStatus::active;
};

struct DefenderControl {
    double speed = 0.0;
    double heading = 0.0;
};

struct CaptureEvent {
    IntruderId intruder{};
    AgentId defender{};
    double time = 0.0;
    Vec2 position;
};

struct IntrusionEvent {
    IntruderId intruder{};
    double time = 0.0;
    Vec2 crossing;
};

struct WorldState {
    WorldState(Territory territory_, double capture_radius_, std::uint64_t seed)
        : territory(std::move(territory_)), capture_radius(capture_radius_),
          rng_seed(seed), heading_noise(mix_seed(seed, 1)) {}

    double time = 0.0;
    Territory territory;
    std::vector<DefenderState> defenders;
    std::vector<IntruderState> intruders;  // every intruder spawned so far
    double capture_radius = 5.0;           // epsilon, m
    std::uint64_t rng_seed = 0;
    Rng heading_noise;

    int active_count() const;
};

// heading + turn, unless that would steer an intruder outside the territory
// and currently aimed at it off the territory; then heading - turn, or the
// unchanged heading if both miss.
double perturb_heading(const Territory& territory, Vec2 position, double heading, double turn);

// Forward-Euler update of every agent over dt. Defenders that would leave
// the territory are stopped on the boundary along their motion segment.
// Intruder headings receive a uniform perturbation in [-delta*dt, +delta*dt]
// through perturb_heading, so an intruder aimed at the territory stays aimed.
// Throws std::invalid_argument for dt <= 0, a control count mismatch, or a
// commanded speed above a defender's max_speed.
void step_agents(WorldState& world, std::span<const DefenderControl> controls, double dt);

// Marks active intruders outside the territory that lie within the capture
// radius of some defender. The nearest defender (lowest id on ties) is credited.
std::vector<CaptureEvent> check_captures(WorldState& world);

// Marks active intruders that are inside the territory (boundary included).
std::vector<IntrusionEvent> check_intrusions(WorldState& world);

struct ExplicitSpawn {
    double time = 0.0;
    Vec2 position;
    double heading = 0.0;
};

struct SpawnSchedule {
    int total = 0;
    int max_concurrent = 6;
    double min_separation = 0.0;   // s, between sorted predicted arrival times
    double mean_interval = 4.0;    // s, mean gap between scheduled spawns
    double spawn_radius_min = 0.0; // m from the centroid
    double spawn_radius_max = 0.0;
    double speed = 3.0;            // V_I, m/s
    double heading_rate_limit = 0.1;
    // When non-empty these are used in place of random draws and `total`
    // must equal their count.
    std::vector<ExplicitSpawn> explicit_spawns;
};

// Throws std::invalid_argument when the schedule cannot be honored.
void validate(const SpawnSchedule& schedule, const Territory& territory);

// Draws all spawn candidates up front from its own seeded stream, then
// releases them in order subject to the concurrency cap and the minimum
// separation between predicted arrival times.
class SpawnScheduler {
public:
    SpawnScheduler(SpawnSchedule schedule, const Territory& territory, std::uint64_t seed);

    bool exhausted() const { return next_ >= candidates_.size(); }
    int spawned() const { return static_cast<int>(next_); }
    const SpawnSchedule& schedule() const { return schedule_; }

    // Intruders released at `now` given the current active count.
    std::vector<IntruderState> release(double now, int active_count, const Territory& territory);

private:
    struct Candidate {
        double earliest = 0.0;
        Vec2 position;
        double heading = 0.0;
    };

    SpawnSchedule schedule_;
    std::vector<Candidate> candidates_;
    std::vector<double> predicted_arrivals_;  // sorted
    std::size_t next_ = 0;
};

// Appends the intruders the scheduler releases at world.time.
void spawn_intruders(WorldState& world, SpawnScheduler& scheduler);

}  // namespace pdef
