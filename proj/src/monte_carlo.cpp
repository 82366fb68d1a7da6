#include "pdef/monte_carlo.hpp"

#include <cmath>

#include <fmt/format.h>

#include "pdef/parallel.hpp"

namespace pdef {

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::defender_speed: return "defender_speed";
        case SweepAxis::sensing_radius: return "sensing_radius";
        case SweepAxis::separation: return "separation";
        case SweepAxis::intruder_speed: return "intruder_speed";
    }
    return "unknown";
}

SweepAxis parse_axis(const std::string& name) {
    for (SweepAxis a : {SweepAxis::defender_speed, SweepAxis::sensing_radius,
                        SweepAxis::separation, SweepAxis::intruder_speed}) {
        if (name == to_string(a)) return a;
    }
    throw ConfigError(fmt::format(
        "unknown sweep axis '{}' (expected defender_speed, sensing_radius, separation or "
        "intruder_speed)",
        name));
}

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value) {
    ScenarioConfig c = base;
    switch (axis) {
        case SweepAxis::defender_speed: c.defender_max_speed = value; break;
        case SweepAxis::sensing_radius: c.sensing_radius = value; break;
        case SweepAxis::separation: c.intruders.min_separation = value; break;
        case SweepAxis::intruder_speed: c.intruders.speed = value; break;
    }
    return c;
}

Interval wilson_interval(int successes, int trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = trials;
    const double p = successes / n;
    const double z2 = z * z;
    const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    // The bounds are exactly 0 and 1 at the extremes; rounding would leave them a hair inside.
    return {successes <= 0 ? 0.0 : std::max(0.0, center - half),
            successes >= trials ? 1.0 : std::min(1.0, center + half)};
}

double two_proportion_z(int successes_high, int trials_high, int successes_low, int trials_low) {
    const double p1 = static_cast<double>(successes_high) / trials_high;
    const double p0 = static_cast<double>(successes_low) / trials_low;
    const double pooled =
        static_cast<double>(successes_high + successes_low) / (trials_high + trials_low);
    const double se = std::sqrt(pooled * (1 - pooled) * (1.0 / trials_high + 1.0 / trials_low));
    if (se == 0.0) return p1 > p0 ? INFINITY : 0.0;
    return (p1 - p0) / se;
}

SweepResult run_monte_carlo(const ScenarioConfig& base, SweepAxis axis,
                            const std::vector<double>& grid, int runs, std::uint64_t seed_base,
                            unsigned threads) {
    if (grid.empty()) throw ConfigError("sweep grid is empty");
    if (runs < 1) throw ConfigError("sweep needs at least one run per cell");
    std::vector<ScenarioConfig> configs;
    for (double v : grid) {
        if (!std::isfinite(v) || v < 0.0 || (v == 0.0 && axis != SweepAxis::separation)) {
            throw ConfigError(fmt::format("sweep grid value {} is invalid for axis {}", v,
                                          to_string(axis)));
        }
        configs.push_back(apply_axis(base, axis, v));
        validate(configs.back());
    }

    SweepResult out;
    out.scenario = base.name;
    out.axis = axis;
    out.seed_base = seed_base;
    const std::size_t n_runs = static_cast<std::size_t>(runs);
    out.episodes.resize(grid.size() * n_runs);

    parallel_for(out.episodes.size(), threads, [&](std::size_t k) {
        const std::size_t cell = k / n_runs;
        const int run = static_cast<int>(k % n_runs);
        ScenarioConfig config = configs[cell];
        config.seed = mix_seed(seed_base, static_cast<std::uint64_t>(run));
        const EpisodeResult r = run_episode(config);
        EpisodeRow& row = out.episodes[k];
        row.cell = cell;
        row.run = run;
        row.seed = config.seed;
        row.success = r.success;
        row.reason = r.reason;
        row.spawned = r.spawned;
        row.captures = r.captures;
        row.intrusions = r.intrusions;
        row.end_time = r.end_time;
        row.planning_rounds = r.allocation.planning_rounds;
        row.max_iterations = r.allocation.max_iterations;
        row.allocation_wall_seconds = r.allocation.wall_seconds;
    });

    for (std::size_t c = 0; c < grid.size(); ++c) {
        SweepCell cell;
        cell.value = grid[c];
        cell.runs = runs;
        double captures = 0.0;
        double wall = 0.0;
        for (std::size_t r = 0; r < n_runs; ++r) {
            const EpisodeRow& row = out.episodes[c * n_runs + r];
            cell.successes += row.success ? 1 : 0;
            captures += row.captures;
            wall += row.allocation_wall_seconds;
        }
        cell.success_rate = static_cast<double>(cell.successes) / runs;
        const Interval ci = wilson_interval(cell.successes, runs);
        cell.ci_low = ci.low;
        cell.ci_high = ci.high;
        cell.mean_captures = captures / runs;
        cell.mean_allocation_wall_seconds = wall / runs;
        out.cells.push_back(cell);
    }
    return out;
}

}  // namespace pdef
