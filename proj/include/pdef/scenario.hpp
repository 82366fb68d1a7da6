#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdef/cost.hpp"
#include "pdef/world.hpp"

namespace pdef {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every experiment knob. Units: meters, seconds, radians.
struct ScenarioConfig {
    std::string name = "scenario";
    std::uint64_t seed = 0;

    std::vector<Vec2> territory;  // counter-clockwise

    std::vector<Vec2> defender_positions;
    double defender_max_speed = 4.5;

    SpawnSchedule intruders;

    double capture_radius = 5.0;
    double sensing_radius = 60.0;

    double eta = 0.5;
    TimeOrigin time_origin = TimeOrigin::planning_time;
    double plan_interval = 0.5;
    std::size_t max_bundle_size = std::numeric_limits<std::size_t>::max();

    double dt = 0.1;
    double time_limit = 300.0;
};

// Throws ConfigError describing the first violated constraint.
void validate(const ScenarioConfig& config);

// Parses the YAML scenario format documented in docs/scenario_format.md.
// Unknown keys are rejected. Throws ConfigError.
ScenarioConfig parse_scenario(const std::string& yaml_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

// A path to an existing file, or the name of a scenario shipped in the
// scenarios/ directory ("case_study" -> scenarios/case_study.yaml).
std::filesystem::path resolve_scenario(const std::string& name_or_path);

}  // namespace pdef
