#include "pdef/results.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <system_error>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace pdef {

namespace {

using nlohmann::ordered_json;

std::string schema_line(std::string_view kind) {
    return fmt::format("# schema: pdef.{}/{}\n", kind, kResultSchemaVersion);
}

ordered_json point(Vec2 p) { return ordered_json::array({p.x, p.y}); }

template <typename T>
ordered_json optional_json(const std::optional<T>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json optional_agent(const std::optional<AgentId>& a) {
    return a ? ordered_json(to_int(*a)) : ordered_json(nullptr);
}

std::string optional_agent_csv(const std::optional<AgentId>& a) {
    return a ? fmt::format("{}", to_int(*a)) : std::string();
}

std::string hex(std::uint64_t v) { return fmt::format("{:016x}", v); }

}  // namespace

std::string episode_json(const EpisodeResult& r) {
    ordered_json j;
    j["schema"] = fmt::format("pdef.episode/{}", kResultSchemaVersion);
    j["scenario"] = r.scenario;
    j["seed"] = r.seed;
    j["success"] = r.success;
    j["reason"] = r.reason;
    j["end_time"] = r.end_time;
    j["spawned"] = r.spawned;
    j["captures"] = r.captures;
    j["intrusions"] = r.intrusions;
    j["captures_per_defender"] = r.captures_per_defender;
    ordered_json intruders = ordered_json::array();
    for (const IntruderOutcome& o : r.intruders) {
        intruders.push_back({{"id", to_int(o.id)},
                             {"spawn_time", o.spawn_time},
                             {"spawn_position", point(o.spawn_position)},
                             {"status", to_string(o.status)},
                             {"resolved_time", optional_json(o.resolved_time)},
                             {"captured_by", optional_agent(o.captured_by)}});
    }
    j["intruders"] = std::move(intruders);
    j["allocation"] = {{"planning_rounds", r.allocation.planning_rounds},
                       {"total_iterations", r.allocation.total_iterations},
                       {"max_iterations", r.allocation.max_iterations},
                       {"max_path_length", r.allocation.max_path_length}};
    return j.dump(2) + "\n";
}

std::string timeline_csv(const EpisodeResult& r) {
    std::string out = schema_line("timeline");
    out += "time,event,intruder,defender,x,y\n";
    for (const TimelineEvent& e : r.timeline) {
        out += fmt::format("{},{},{},{},{},{}\n", e.time, to_string(e.kind), to_int(e.intruder),
                           optional_agent_csv(e.defender), e.position.x, e.position.y);
    }
    return out;
}

std::string sweep_csv(const SweepResult& r) {
    std::string out = schema_line("sweep");
    out += fmt::format("# scenario={} axis={} seed_base={}\n", r.scenario, to_string(r.axis),
                       r.seed_base);
    out += "value,runs,successes,success_rate,ci_low,ci_high,mean_captures\n";
    for (const SweepCell& c : r.cells) {
        out += fmt::format("{},{},{},{},{},{},{}\n", c.value, c.runs, c.successes,
                           c.success_rate, c.ci_low, c.ci_high, c.mean_captures);
    }
    return out;
}

std::string episodes_csv(const SweepResult& r) {
    std::string out = schema_line("sweep_episodes");
    out += "value,run,seed,success,reason,spawned,captures,intrusions,end_time,planning_rounds,"
           "max_iterations\n";
    for (const EpisodeRow& e : r.episodes) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.cells.at(e.cell).value, e.run,
                           e.seed, e.success ? 1 : 0, e.reason, e.spawned, e.captures,
                           e.intrusions, e.end_time, e.planning_rounds, e.max_iterations);
    }
    return out;
}

std::string sweep_timing_csv(const SweepResult& r) {
    std::string out = schema_line("sweep_timing");
    out += "value,mean_allocation_wall_seconds\n";
    for (const SweepCell& c : r.cells) {
        out += fmt::format("{},{}\n", c.value, c.mean_allocation_wall_seconds);
    }
    return out;
}

std::string bench_csv(const std::vector<BenchmarkRow>& rows) {
    std::string out = schema_line("bench");
    out += "n,samples,converged,mean_iterations,assignment_digest\n";
    for (const BenchmarkRow& b : rows) {
        out += fmt::format("{},{},{},{},{}\n", b.n, b.samples, b.converged, b.mean_iterations,
                           hex(b.assignment_digest));
    }
    return out;
}

std::string bench_timing_csv(const std::vector<BenchmarkRow>& rows) {
    std::string out = schema_line("bench_timing");
    out += "n,mean_wall_seconds,var_wall_seconds,mean_critical_path_seconds,"
           "var_critical_path_seconds\n";
    for (const BenchmarkRow& b : rows) {
        out += fmt::format("{},{},{},{},{}\n", b.n, b.mean_wall_seconds, b.var_wall_seconds,
                           b.mean_critical_path_seconds, b.var_critical_path_seconds);
    }
    return out;
}

std::string oracle_check_json(const OracleCheckReport& r) {
    ordered_json j;
    j["schema"] = fmt::format("pdef.oracle_check/{}", kResultSchemaVersion);
    j["instances"] = r.cases.size();
    j["ok"] = r.ok();
    j["constraint_violations"] = r.violations;
    j["non_converged"] = r.non_converged;
    j["engine_below_optimum"] = r.below_optimum;
    j["engine_within_greedy"] = r.within_greedy;
    j["optimal_partial_observability_cases"] = r.optimal_cases;
    j["worst_cost_ratio"] = r.worst_cost_ratio;
    j["single_task_cases"] = r.subclass_cases;
    j["single_task_greedy_matches"] = r.subclass_greedy_matches;
    ordered_json cases = ordered_json::array();
    for (const OracleCheckCase& c : r.cases) {
        cases.push_back({{"seed", c.seed},
                         {"defenders", c.defenders},
                         {"tasks", c.tasks},
                         {"single_task", c.single_task_subclass},
                         {"converged", c.converged},
                         {"constraints_ok", c.constraints.ok()},
                         {"engine_assigned", c.engine.assigned},
                         {"engine_cost", c.engine.cost},
                         {"optimum_assigned", c.optimum.assigned},
                         {"optimum_cost", c.optimum.cost},
                         {"greedy_assigned", c.greedy.assigned},
                         {"greedy_cost", c.greedy.cost},
                         {"matches_greedy", c.matches_greedy}});
    }
    j["cases"] = std::move(cases);
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw OutputError(fmt::format("cannot open '{}' for writing: {}", path.string(),
                                      std::strerror(errno)));
    }
    out << text;
    out.flush();
    if (!out) throw OutputError(fmt::format("write to '{}' failed", path.string()));
}

namespace {

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw OutputError(fmt::format("cannot create directory '{}': {}", dir.string(), ec.message()));
    }
}

}  // namespace

void write_episode(const std::filesystem::path& dir, const EpisodeResult& result) {
    ensure_dir(dir);
    write_text_file(dir / "episode.json", episode_json(result));
    write_text_file(dir / "timeline.csv", timeline_csv(result));
    write_text_file(dir / "episode_timing.csv",
                    schema_line("episode_timing") +
                        "allocation_wall_seconds,allocation_critical_path_seconds\n" +
                        fmt::format("{},{}\n", result.allocation.wall_seconds,
                                    result.allocation.critical_path_seconds));
}

void write_sweep(const std::filesystem::path& dir, const SweepResult& result) {
    ensure_dir(dir);
    write_text_file(dir / "sweep.csv", sweep_csv(result));
    write_text_file(dir / "episodes.csv", episodes_csv(result));
    write_text_file(dir / "sweep_timing.csv", sweep_timing_csv(result));
}

void write_benchmark(const std::filesystem::path& dir, const std::vector<BenchmarkRow>& rows) {
    ensure_dir(dir);
    write_text_file(dir / "bench.csv", bench_csv(rows));
    write_text_file(dir / "bench_timing.csv", bench_timing_csv(rows));
}

void write_oracle_check(const std::filesystem::path& dir, const OracleCheckReport& report) {
    ensure_dir(dir);
    write_text_file(dir / "oracle_check.json", oracle_check_json(report));
}

}  // namespace pdef
