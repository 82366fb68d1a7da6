#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdef/episode.hpp"

namespace pdef {

enum class SweepAxis { defender_speed, sensing_radius, separation, intruder_speed };

const char* to_string(SweepAxis axis);
// Throws ConfigError for an unknown name.
SweepAxis parse_axis(const std::string& name);

// Copy of `base` with the axis parameter set to `value`.
ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value);

struct EpisodeRow {
    std::size_t cell = 0;
    int run = 0;
    std::uint64_t seed = 0;
    bool success = false;
    std::string reason;
    int spawned = 0;
    int captures = 0;
    int intrusions = 0;
    double end_time = 0.0;
    int planning_rounds = 0;
    int max_iterations = 0;
    double allocation_wall_seconds = 0.0;  // timing only
};

struct SweepCell {
    double value = 0.0;
    int runs = 0;
    int successes = 0;
    double success_rate = 0.0;
    double ci_low = 0.0;   // 95% Wilson interval
    double ci_high = 0.0;
    double mean_captures = 0.0;
    double mean_allocation_wall_seconds = 0.0;  // timing only
};

struct SweepResult {
    std::string scenario;
    SweepAxis axis = SweepAxis::defender_speed;
    std::uint64_t seed_base = 0;
    std::vector<SweepCell> cells;
    std::vector<EpisodeRow> episodes;  // cell-major, run-minor
};

// Run r of every cell uses seed mix_seed(seed_base, r), so cells share
// spawn draws. Throws ConfigError for an empty or non-positive grid, runs < 1,
// or a cell whose config fails validation.
SweepResult run_monte_carlo(const ScenarioConfig& base, SweepAxis axis,
                            const std::vector<double>& grid, int runs, std::uint64_t seed_base,
                            unsigned threads = 1);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

Interval wilson_interval(int successes, int trials, double z = 1.959963984540054);

// Pooled two-proportion z statistic for H1: p_high > p_low.
double two_proportion_z(int successes_high, int trials_high, int successes_low, int trials_low);

// One-sided critical value at alpha = 0.05.
inline constexpr double kOneSidedZ05 = 1.6448536269514722;

}  // namespace pdef
