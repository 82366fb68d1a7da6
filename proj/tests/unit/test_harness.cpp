#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "support.hpp"

#include "pdef/episode.hpp"
#include "pdef/monte_carlo.hpp"
#include "pdef/results.hpp"
#include "pdef/scenario.hpp"

using namespace pdef;
using pdef::test::close;

namespace {

const char* kMinimal = R"(
name: minimal
seed: 3
territory:
  vertices: [[50, -50], [50, 50], [-50, 50], [-50, -50]]
defenders:
  max_speed: 4.5
  positions: [[20, 0]]
intruders:
  speed: 3
  heading_rate_limit: 0
  spawns:
    - {time: 0, position: [80, 0], heading_deg: 180}
capture_radius: 5
sensing_radius: 60
simulation:
  dt: 0.1
  time_limit: 60
)";

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("scenario parsing reads every section") {
    const ScenarioConfig c = parse_scenario(kMinimal);
    CHECK(c.name == "minimal");
    CHECK(c.seed == 3);
    CHECK(c.territory.size() == 4);
    CHECK(c.defender_positions.size() == 1);
    CHECK(c.intruders.total == 1);
    CHECK(close(c.intruders.explicit_spawns[0].heading, std::numbers::pi));
    CHECK(c.time_origin == TimeOrigin::planning_time);
}

TEST_CASE("scenario parsing rejects unknown keys and bad values") {
    CHECK_THROWS_AS(parse_scenario(std::string(kMinimal) + "colour: blue\n"), ConfigError);
    std::string bad_eta = std::string(kMinimal) + "planner: {eta: 1.5}\n";
    CHECK_THROWS_AS(parse_scenario(bad_eta), ConfigError);
    std::string bad_origin = std::string(kMinimal) + "planner: {time_origin: yesterday}\n";
    CHECK_THROWS_AS(parse_scenario(bad_origin), ConfigError);
    CHECK_THROWS_AS(parse_scenario("territory: {vertices: [[0, 0], [1, 0]]}\n"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), ConfigError);
    CHECK_THROWS_AS(resolve_scenario("no_such_scenario"), ConfigError);
}

TEST_CASE("shipped scenarios load") {
    CHECK_NOTHROW(load_scenario(resolve_scenario("case_study")));
    CHECK_NOTHROW(load_scenario(resolve_scenario("monte_carlo")));
}

TEST_CASE("axis names round trip") {
    for (SweepAxis a : {SweepAxis::defender_speed, SweepAxis::sensing_radius,
                        SweepAxis::separation, SweepAxis::intruder_speed}) {
        CHECK(parse_axis(to_string(a)) == a);
    }
    CHECK_THROWS_AS(parse_axis("wind"), ConfigError);
}

TEST_CASE("wilson interval and pooled z statistic") {
    const double z = 1.959963984540054;
    const double n = 100.0;
    const double p = 0.5;
    const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
    const Interval w = wilson_interval(50, 100);
    CHECK(close(w.low, centre - half));
    CHECK(close(w.high, centre + half));
    const Interval none = wilson_interval(0, 100);
    CHECK(none.low == 0.0);
    CHECK(wilson_interval(100, 100).high == 1.0);
    CHECK(none.high > 0.0);

    CHECK(close(two_proportion_z(60, 100, 40, 100), 0.2 / std::sqrt(0.25 * 0.02)));
    CHECK(two_proportion_z(100, 100, 100, 100) == 0.0);
}

TEST_CASE("sweeps reject bad grids") {
    const ScenarioConfig c = parse_scenario(kMinimal);
    CHECK_THROWS_AS(run_monte_carlo(c, SweepAxis::defender_speed, {}, 5, 1), ConfigError);
    CHECK_THROWS_AS(run_monte_carlo(c, SweepAxis::defender_speed, {-1.0}, 5, 1), ConfigError);
    CHECK_THROWS_AS(run_monte_carlo(c, SweepAxis::defender_speed, {4.5}, 0, 1), ConfigError);
}

TEST_CASE("sweep cells report rates in range and are thread independent") {
    const ScenarioConfig c = parse_scenario(kMinimal);
    const SweepResult one = run_monte_carlo(c, SweepAxis::defender_speed, {1.0, 4.5}, 6, 9, 1);
    const SweepResult many = run_monte_carlo(c, SweepAxis::defender_speed, {1.0, 4.5}, 6, 9, 4);
    REQUIRE(one.cells.size() == 2);
    for (const SweepCell& cell : one.cells) {
        CHECK(cell.runs == 6);
        CHECK(cell.success_rate >= 0.0);
        CHECK(cell.success_rate <= 1.0);
        CHECK(cell.ci_low <= cell.success_rate);
        CHECK(cell.ci_high >= cell.success_rate);
    }
    CHECK(one.episodes.size() == 12);
    CHECK(sweep_csv(one) == sweep_csv(many));
    CHECK(episodes_csv(one) == episodes_csv(many));
}

TEST_CASE("an empty sweep writes only the header") {
    SweepResult empty;
    empty.scenario = "none";
    const std::string csv = sweep_csv(empty);
    std::size_t rows = 0;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') ++rows;
    }
    CHECK(rows == 1);
    CHECK(csv.find("value,runs,successes") != std::string::npos);
}

TEST_CASE("episodes resolve with the expected reason") {
    ScenarioConfig c = parse_scenario(kMinimal);
    const EpisodeResult caught = run_episode(c);
    CHECK(caught.success);
    CHECK(caught.reason == "ok");
    CHECK(caught.captures == 1);

    ScenarioConfig quiet = c;
    quiet.intruders.explicit_spawns.clear();
    quiet.intruders.total = 0;
    const EpisodeResult empty = run_episode(quiet);
    CHECK(empty.success);
    CHECK(empty.end_time == 0.0);

    ScenarioConfig undefended = c;
    undefended.defender_positions.clear();
    const EpisodeResult lost = run_episode(undefended);
    CHECK_FALSE(lost.success);
    CHECK(lost.reason == "intrusion");
    CHECK(lost.intrusions == 1);
    // 30 m at 3 m/s.
    CHECK(close(lost.end_time, 10.0));
}

TEST_CASE("episode outputs are byte-identical across runs") {
    const ScenarioConfig c = load_scenario(resolve_scenario("case_study"));
    const EpisodeResult a = run_episode(c);
    const EpisodeResult b = run_episode(c);
    CHECK(episode_json(a) == episode_json(b));
    CHECK(timeline_csv(a) == timeline_csv(b));
    CHECK(episode_json(a).find("wall") == std::string::npos);
}

TEST_CASE("writers create directories and report failing paths") {
    const auto dir = std::filesystem::temp_directory_path() / "pdef_unit_results";
    std::filesystem::remove_all(dir);
    const EpisodeResult r = run_episode(parse_scenario(kMinimal));
    write_episode(dir / "nested", r);
    CHECK(slurp(dir / "nested" / "episode.json") == episode_json(r));
    CHECK(std::filesystem::exists(dir / "nested" / "timeline.csv"));

    // A regular file where a directory is expected.
    write_text_file(dir / "blocker", "x");
    try {
        write_episode(dir / "blocker" / "out", r);
        FAIL("expected OutputError");
    } catch (const OutputError& e) {
        CHECK(std::string(e.what()).find("blocker") != std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("steering holds on arrival and skips resolved intruders") {
    WorldState w(pdef::test::square(), 5.0, 1);
    DefenderState d;
    d.max_speed = 4.5;
    w.defenders.push_back(d);
    IntruderState in;
    in.id = IntruderId{0};
    in.status = IntruderStatus::captured;
    w.intruders.push_back(in);
    in.id = IntruderId{1};
    in.status = IntruderStatus::active;
    w.intruders.push_back(in);
    const std::vector<Task> path{pdef::test::task_at(0, {50, 0}, 10, {80, 0}),
                                 pdef::test::task_at(1, {0, 0.2}, 10, {0, 80})};
    const DefenderControl c = steer_toward(d, path, w, 0.1);
    CHECK(close(c.speed, 2.0));
    CHECK(close(c.heading, std::numbers::pi / 2));
}
