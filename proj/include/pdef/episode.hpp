#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pdef/allocation.hpp"
#include "pdef/scenario.hpp"

namespace pdef {

enum class EventKind { spawn, assign, unassign, capture, intrusion };

const char* to_string(EventKind kind);
const char* to_string(IntruderStatus status);

struct TimelineEvent {
    double time = 0.0;
    EventKind kind = EventKind::spawn;
    IntruderId intruder{};
    std::optional<AgentId> defender;
    Vec2 position;
};

struct IntruderOutcome {
    IntruderId id{};
    double spawn_time = 0.0;
    Vec2 spawn_position;
    IntruderStatus status = IntruderStatus::active;
    std::optional<double> resolved_time;
    std::optional<AgentId> captured_by;
};

struct AllocationStats {
    int planning_rounds = 0;
    long long total_iterations = 0;
    int max_iterations = 0;
    int max_path_length = 0;  // longest planned path seen in any round
    // Wall-clock figures; not part of the deterministic result payload.
    double wall_seconds = 0.0;
    double critical_path_seconds = 0.0;
};

struct EpisodeResult {
    std::string scenario;
    std::uint64_t seed = 0;
    bool success = false;
    std::string reason;  // "ok", "intrusion" or "timeout"
    double end_time = 0.0;
    int spawned = 0;
    int captures = 0;
    int intrusions = 0;
    std::vector<int> captures_per_defender;
    std::vector<IntruderOutcome> intruders;
    std::vector<TimelineEvent> timeline;
    AllocationStats allocation;
};

struct EpisodeOptions {
    // Called after every planning round with the simulation time and the
    // per-iteration agent states of that round.
    std::function<void(double, const RoundTrace&)> on_round_trace;
};

// Runs sense -> task -> allocate -> control -> step -> capture -> intrusion
// until every intruder is resolved or the time limit passes. Throws
// ConfigError for an invalid config and ConsensusError if allocation fails
// to converge.
EpisodeResult run_episode(const ScenarioConfig& config, const EpisodeOptions& options = {});

// Fly at max speed toward the lambda of the first task whose intruder is still
// active; hold on arrival or when the path is empty.
DefenderControl steer_toward(const DefenderState& defender, const std::vector<Task>& path,
                             const WorldState& world, double dt);

}  // namespace pdef
