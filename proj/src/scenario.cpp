#include "pdef/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace pdef {

void validate(const ScenarioConfig& c) {
    const auto require = [](bool ok, std::string_view what) {
        if (!ok) throw ConfigError(fmt::format("invalid scenario: {}", what));
    };
    std::optional<Territory> territory;
    try {
        territory.emplace(c.territory);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(fmt::format("invalid scenario: {}", e.what()));
    }
    require(c.defender_max_speed > 0.0, "defender max_speed must be positive");
    for (const Vec2& p : c.defender_positions) {
        require(territory->contains(p), "defender initial positions must be inside the territory");
    }
    require(c.capture_radius > 0.0, "capture_radius must be positive");
    require(c.sensing_radius > 0.0, "sensing_radius must be positive");
    require(c.capture_radius < c.sensing_radius, "capture_radius must be below sensing_radius");
    require(c.eta > 0.0 && c.eta < 1.0, "eta must lie in (0, 1)");
    require(c.dt > 0.0, "dt must be positive");
    require(c.plan_interval > 0.0, "plan_interval must be positive");
    require(c.time_limit > 0.0, "time_limit must be positive");
    require(c.max_bundle_size > 0, "max_bundle_size must be positive");
    try {
        validate(c.intruders, *territory);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(fmt::format("invalid scenario: {}", e.what()));
    }
}

namespace {

void check_keys(const YAML::Node& node, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
    if (!node.IsMap()) throw ConfigError(fmt::format("{}: expected a mapping", where));
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
        }
    }
}

Vec2 read_point(const YAML::Node& node, std::string_view where) {
    if (!node.IsSequence() || node.size() != 2) {
        throw ConfigError(fmt::format("{}: expected [x, y]", where));
    }
    return {node[0].as<double>(), node[1].as<double>()};
}

std::vector<Vec2> read_points(const YAML::Node& node, std::string_view where) {
    if (!node.IsSequence()) throw ConfigError(fmt::format("{}: expected a list of [x, y]", where));
    std::vector<Vec2> out;
    for (const auto& p : node) out.push_back(read_point(p, where));
    return out;
}

template <typename T>
void read_into(const YAML::Node& parent, const char* key, T& out) {
    if (const auto n = parent[key]) out = n.as<T>();
}

double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

std::vector<Vec2> read_territory(const YAML::Node& node) {
    check_keys(node, {"vertices", "regular"}, "territory");
    if (node["vertices"] && node["regular"]) {
        throw ConfigError("territory: give either vertices or regular, not both");
    }
    if (const auto v = node["vertices"]) return read_points(v, "territory.vertices");
    if (const auto r = node["regular"]) {
        check_keys(r, {"center", "radius", "sides", "phase_deg"}, "territory.regular");
        Vec2 center{};
        if (r["center"]) center = read_point(r["center"], "territory.regular.center");
        const double radius = r["radius"].as<double>(0.0);
        const int sides = r["sides"].as<int>(0);
        const double phase = degrees_to_radians(r["phase_deg"].as<double>(0.0));
        try {
            return Territory::regular_polygon(center, radius, sides, phase).vertices();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(fmt::format("territory.regular: {}", e.what()));
        }
    }
    throw ConfigError("territory: missing vertices");
}

SpawnSchedule read_intruders(const YAML::Node& node) {
    check_keys(node,
               {"speed", "heading_rate_limit", "max_concurrent", "min_separation", "total",
                "mean_interval", "spawn_radius", "spawns"},
               "intruders");
    SpawnSchedule s;
    read_into(node, "speed", s.speed);
    read_into(node, "heading_rate_limit", s.heading_rate_limit);
    read_into(node, "max_concurrent", s.max_concurrent);
    read_into(node, "min_separation", s.min_separation);
    read_into(node, "total", s.total);
    read_into(node, "mean_interval", s.mean_interval);
    if (const auto r = node["spawn_radius"]) {
        const Vec2 range = read_point(r, "intruders.spawn_radius");
        s.spawn_radius_min = range.x;
        s.spawn_radius_max = range.y;
    }
    if (const auto spawns = node["spawns"]) {
        if (!spawns.IsSequence()) throw ConfigError("intruders.spawns: expected a list");
        for (const auto& e : spawns) {
            check_keys(e, {"time", "position", "heading_deg", "aim"}, "intruders.spawns[]");
            ExplicitSpawn sp;
            sp.time = e["time"].as<double>(0.0);
            if (!e["position"]) throw ConfigError("intruders.spawns[]: missing position");
            sp.position = read_point(e["position"], "intruders.spawns[].position");
            if (e["heading_deg"] && e["aim"]) {
                throw ConfigError("intruders.spawns[]: give either heading_deg or aim");
            }
            if (e["aim"]) {
                const Vec2 d = read_point(e["aim"], "intruders.spawns[].aim") - sp.position;
                sp.heading = wrap_angle(std::atan2(d.y, d.x));
            } else if (e["heading_deg"]) {
                sp.heading = wrap_angle(degrees_to_radians(e["heading_deg"].as<double>()));
            } else {
                throw ConfigError("intruders.spawns[]: missing heading_deg or aim");
            }
            s.explicit_spawns.push_back(sp);
        }
        if (node["total"] && s.total != static_cast<int>(s.explicit_spawns.size())) {
            throw ConfigError("intruders: total disagrees with the number of spawns");
        }
        s.total = static_cast<int>(s.explicit_spawns.size());
    }
    return s;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& yaml_text) {
    ScenarioConfig c;
    try {
        const YAML::Node root = YAML::Load(yaml_text);
        check_keys(root,
                   {"name", "seed", "territory", "defenders", "intruders", "capture_radius",
                    "sensing_radius", "planner", "simulation"},
                   "scenario");
        read_into(root, "name", c.name);
        read_into(root, "seed", c.seed);
        if (!root["territory"]) throw ConfigError("scenario: missing territory");
        c.territory = read_territory(root["territory"]);

        if (const auto d = root["defenders"]) {
            check_keys(d, {"max_speed", "positions"}, "defenders");
            read_into(d, "max_speed", c.defender_max_speed);
            if (d["positions"]) c.defender_positions = read_points(d["positions"], "defenders.positions");
        }
        if (const auto i = root["intruders"]) c.intruders = read_intruders(i);
        read_into(root, "capture_radius", c.capture_radius);
        read_into(root, "sensing_radius", c.sensing_radius);

        if (const auto p = root["planner"]) {
            check_keys(p, {"eta", "time_origin", "plan_interval", "max_bundle_size"}, "planner");
            read_into(p, "eta", c.eta);
            read_into(p, "plan_interval", c.plan_interval);
            if (const auto o = p["time_origin"]) {
                const auto v = o.as<std::string>();
                if (v == "planning_time") {
                    c.time_origin = TimeOrigin::planning_time;
                } else if (v == "zero") {
                    c.time_origin = TimeOrigin::zero;
                } else {
                    throw ConfigError(fmt::format("planner.time_origin: unknown value '{}'", v));
                }
            }
            if (const auto b = p["max_bundle_size"]) {
                const auto v = b.as<long long>();
                if (v < 0) throw ConfigError("planner.max_bundle_size must be non-negative");
                c.max_bundle_size =
                    v == 0 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(v);
            }
        }
        if (const auto s = root["simulation"]) {
            check_keys(s, {"dt", "time_limit"}, "simulation");
            read_into(s, "dt", c.dt);
            read_into(s, "time_limit", c.time_limit);
        }
    } catch (const YAML::Exception& e) {
        throw ConfigError(fmt::format("scenario parse error: {}", e.what()));
    }
    validate(c);
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open scenario file '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_scenario(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::filesystem::path resolve_scenario(const std::string& name_or_path) {
    const std::filesystem::path direct(name_or_path);
    if (std::filesystem::is_regular_file(direct)) return direct;
    const std::filesystem::path shipped =
        std::filesystem::path(PDEF_SCENARIO_DIR) / (name_or_path + ".yaml");
    if (std::filesystem::is_regular_file(shipped)) return shipped;
    throw ConfigError(fmt::format("no scenario file or shipped scenario named '{}'", name_or_path));
}

}  // namespace pdef
