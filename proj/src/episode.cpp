#include "pdef/episode.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pdef/sensing.hpp"
#include "pdef/tasking.hpp"

namespace pdef {

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::spawn: return "spawn";
        case EventKind::assign: return "assign";
        case EventKind::unassign: return "unassign";
        case EventKind::capture: return "capture";
        case EventKind::intrusion: return "intrusion";
    }
    return "unknown";
}

const char* to_string(IntruderStatus status) {
    switch (status) {
        case IntruderStatus::active: return "active";
        case IntruderStatus::captured: return "captured";
        case IntruderStatus::intruded: return "intruded";
    }
    return "unknown";
}

DefenderControl steer_toward(const DefenderState& defender, const std::vector<Task>& path,
                             const WorldState& world, double dt) {
    for (const Task& task : path) {
        const auto it = std::find_if(world.intruders.begin(), world.intruders.end(),
                                     [&](const IntruderState& in) { return in.id == task.id; });
        if (it == world.intruders.end() || it->status != IntruderStatus::active) continue;
        const Vec2 to_go = task.lambda.position - defender.position;
        const double gap = norm(to_go);
        if (gap <= 1e-9) return {0.0, defender.heading};
        return {std::min(defender.max_speed, gap / dt), std::atan2(to_go.y, to_go.x)};
    }
    return {0.0, defender.heading};
}

namespace {

class Episode {
public:
    Episode(const ScenarioConfig& config, const EpisodeOptions& options)
        : config_(config), options_(options),
          world_(Territory(config.territory), config.capture_radius, config.seed),
          spawner_(config.intruders, world_.territory, config.seed),
          plans_(config.defender_positions.size()) {
        for (std::size_t i = 0; i < config.defender_positions.size(); ++i) {
            DefenderState d;
            d.id = AgentId{static_cast<int>(i)};
            d.position = config.defender_positions[i];
            d.max_speed = config.defender_max_speed;
            world_.defenders.push_back(d);
        }
        result_.scenario = config.name;
        result_.seed = config.seed;
        result_.captures_per_defender.assign(world_.defenders.size(), 0);
    }

    EpisodeResult run() {
        const long long plan_every =
            std::max(1LL, std::llround(config_.plan_interval / config_.dt));
        long long tick = 0;
        while (true) {
            world_.time = tick_time(tick);
            spawn();
            if (spawner_.exhausted() && world_.active_count() == 0) break;
            if (world_.time >= config_.time_limit - 1e-9) {
                result_.reason = "timeout";
                break;
            }
            if (tick % plan_every == 0) plan();

            std::vector<DefenderControl> controls;
            controls.reserve(world_.defenders.size());
            for (std::size_t i = 0; i < world_.defenders.size(); ++i) {
                controls.push_back(steer_toward(world_.defenders[i], plans_[i], world_, config_.dt));
            }
            step_agents(world_, controls, config_.dt);
            ++tick;
            world_.time = tick_time(tick);

            for (const CaptureEvent& e : check_captures(world_)) {
                ++result_.captures;
                ++result_.captures_per_defender[static_cast<std::size_t>(to_int(e.defender))];
                result_.timeline.push_back({e.time, EventKind::capture, e.intruder, e.defender, e.position});
            }
            for (const IntrusionEvent& e : check_intrusions(world_)) {
                ++result_.intrusions;
                result_.timeline.push_back({e.time, EventKind::intrusion, e.intruder, std::nullopt, e.crossing});
            }
        }
        finish();
        return std::move(result_);
    }

private:
    // Rounded to 1e-9 s so accumulated dt multiples print as written.
    double tick_time(long long tick) const {
        return std::round(static_cast<double>(tick) * config_.dt * 1e9) / 1e9;
    }

    void spawn() {
        const std::size_t before = world_.intruders.size();
        spawn_intruders(world_, spawner_);
        for (std::size_t k = before; k < world_.intruders.size(); ++k) {
            const IntruderState& in = world_.intruders[k];
            result_.timeline.push_back({world_.time, EventKind::spawn, in.id, std::nullopt, in.position});
        }
    }

    void plan() {
        const auto observations = observe_all(world_, config_.sensing_radius);
        const auto tasks = refresh_tasks(observations, world_);

        std::vector<AgentInput> agents;
        agents.reserve(world_.defenders.size());
        for (std::size_t i = 0; i < world_.defenders.size(); ++i) {
            agents.push_back({world_.defenders[i].id, world_.defenders[i].position, tasks[i]});
        }
        AllocationParams params;
        params.now = world_.time;
        params.cost = {config_.eta, config_.defender_max_speed, config_.time_origin};
        params.max_bundle_size = config_.max_bundle_size;

        SyncBus bus;
        RoundTrace trace;
        const AllocationResult r =
            allocation_round(agents, params, bus, options_.on_round_trace ? &trace : nullptr);
        if (options_.on_round_trace) options_.on_round_trace(world_.time, trace);

        AllocationStats& stats = result_.allocation;
        ++stats.planning_rounds;
        stats.total_iterations += r.iterations;
        stats.max_iterations = std::max(stats.max_iterations, r.iterations);
        stats.wall_seconds += r.wall_seconds;
        stats.critical_path_seconds += r.critical_path_seconds;

        for (std::size_t i = 0; i < world_.defenders.size(); ++i) {
            const auto& ids = r.assignment.paths.at(world_.defenders[i].id);
            plans_[i].clear();
            for (TaskId id : ids) {
                const auto it = std::find_if(tasks[i].begin(), tasks[i].end(),
                                             [&](const Task& t) { return t.id == id; });
                plans_[i].push_back(*it);
            }
            stats.max_path_length = std::max(stats.max_path_length, static_cast<int>(ids.size()));
        }

        // Record assignment changes.
        std::map<IntruderId, AgentId> now_assigned(r.assignment.winners.begin(),
                                                   r.assignment.winners.end());
        for (const auto& [id, agent] : now_assigned) {
            const auto prev = owner_.find(id);
            if (prev == owner_.end() || prev->second != agent) {
                result_.timeline.push_back(
                    {world_.time, EventKind::assign, id, agent, intruder(id).position});
            }
        }
        for (const auto& [id, agent] : owner_) {
            if (now_assigned.count(id) == 0 && intruder(id).status == IntruderStatus::active) {
                result_.timeline.push_back(
                    {world_.time, EventKind::unassign, id, agent, intruder(id).position});
            }
        }
        owner_ = std::move(now_assigned);
    }

    const IntruderState& intruder(IntruderId id) const {
        return *std::find_if(world_.intruders.begin(), world_.intruders.end(),
                             [&](const IntruderState& in) { return in.id == id; });
    }

    void finish() {
        result_.end_time = world_.time;
        result_.spawned = spawner_.spawned();
        for (const IntruderState& in : world_.intruders) {
            IntruderOutcome o;
            o.id = in.id;
            o.spawn_time = in.spawn_time;
            o.status = in.status;
            result_.intruders.push_back(o);
        }
        for (const TimelineEvent& e : result_.timeline) {
            auto& o = result_.intruders[static_cast<std::size_t>(to_int(e.intruder))];
            if (e.kind == EventKind::spawn) o.spawn_position = e.position;
            if (e.kind == EventKind::capture || e.kind == EventKind::intrusion) o.resolved_time = e.time;
            if (e.kind == EventKind::capture) o.captured_by = e.defender;
        }
        const bool all_resolved = spawner_.exhausted() && world_.active_count() == 0;
        if (result_.intrusions > 0) {
            result_.reason = "intrusion";
        } else if (!all_resolved) {
            result_.reason = "timeout";
        } else {
            result_.reason = "ok";
        }
        result_.success = result_.reason == "ok" &&
                          result_.captures == config_.intruders.total;
    }

    const ScenarioConfig& config_;
    const EpisodeOptions& options_;
    WorldState world_;
    SpawnScheduler spawner_;
    std::vector<std::vector<Task>> plans_;
    std::map<IntruderId, AgentId> owner_;
    EpisodeResult result_;
};

}  // namespace

EpisodeResult run_episode(const ScenarioConfig& config, const EpisodeOptions& options) {
    validate(config);
    return Episode(config, options).run();
}

}  // namespace pdef
