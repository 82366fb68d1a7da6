#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pdef/benchmark.hpp"
#include "pdef/episode.hpp"
#include "pdef/monte_carlo.hpp"
#include "pdef/oracle_check.hpp"
#include "pdef/parallel.hpp"
#include "pdef/results.hpp"
#include "pdef/scenario.hpp"

namespace {

using namespace pdef;

struct Common {
    std::string scenario = "case_study";
    std::optional<std::uint64_t> seed;
    std::string out = "results";
    unsigned threads = 1;
};

ScenarioConfig load(const Common& c) {
    ScenarioConfig config = load_scenario(resolve_scenario(c.scenario));
    if (c.seed) config.seed = *c.seed;
    return config;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            grid.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(fmt::format("--grid: '{}' is not a number", item));
        }
    }
    if (grid.empty()) throw ConfigError("--grid: no values given");
    return grid;
}

int cmd_run(const Common& c) {
    const EpisodeResult r = run_episode(load(c));
    write_episode(c.out, r);
    fmt::print("{}: {} ({} captured, {} intrusions, t={:.1f} s) -> {}\n", r.scenario,
               r.success ? "success" : "failure", r.captures, r.intrusions, r.end_time, c.out);
    return 0;
}

int cmd_trace(const Common& c) {
    std::string text;
    EpisodeOptions options;
    options.on_round_trace = [&](double time, const RoundTrace& trace) {
        for (const BundleState& s : trace) text += format_trace_record(time, s) + "\n";
    };
    const EpisodeResult r = run_episode(load(c), options);
    write_episode(c.out, r);
    write_text_file(std::filesystem::path(c.out) / "trace.txt", text);
    fmt::print("{}: {} planning rounds traced -> {}\n", r.scenario, r.allocation.planning_rounds,
               c.out);
    return 0;
}

int cmd_sweep(const Common& c, const std::string& axis, const std::string& grid, int runs) {
    const ScenarioConfig base = load(c);
    const SweepResult r = run_monte_carlo(base, parse_axis(axis), parse_grid(grid), runs,
                                          base.seed, resolve_threads(c.threads));
    write_sweep(c.out, r);
    for (const SweepCell& cell : r.cells) {
        fmt::print("{}={:<8} success {:>4}/{} ({:.3f})\n", axis, cell.value, cell.successes,
                   cell.runs, cell.success_rate);
    }
    return 0;
}

int cmd_bench(const Common& c, int samples, int warmup, std::size_t bundle_cap) {
    BenchmarkOptions options;
    options.samples = samples;
    options.warmup = warmup;
    options.seed = c.seed.value_or(1);
    options.max_bundle_size = bundle_cap == 0 ? options.max_bundle_size : bundle_cap;
    const auto rows = run_timing_benchmark(options);
    write_benchmark(c.out, rows);
    for (const BenchmarkRow& b : rows) {
        fmt::print("N={} mean {:.6f} s (critical path {:.6f} s), converged {}/{}\n", b.n,
                   b.mean_wall_seconds, b.mean_critical_path_seconds, b.converged, b.samples);
    }
    return 0;
}

int cmd_oracle_check(const Common& c, int runs) {
    OracleCheckOptions options;
    options.runs = runs;
    options.seed = c.seed.value_or(1);
    options.threads = resolve_threads(c.threads);
    const OracleCheckReport r = run_oracle_check(options);
    write_oracle_check(c.out, r);
    fmt::print("{} instances: {} constraint violations, {} below optimum, {} optimal, "
               "single-task greedy matches {}/{}\n",
               r.cases.size(), r.violations, r.below_optimum, r.optimal_cases,
               r.subclass_greedy_matches, r.subclass_cases);
    return r.ok() ? 0 : 2;
}

void add_common(CLI::App* cmd, Common& c, bool scenario, bool threads) {
    if (scenario) {
        cmd->add_option("--scenario", c.scenario, "Scenario file or shipped scenario name")
            ->capture_default_str();
    }
    cmd->add_option("--seed", c.seed, "Seed override (sweep: base seed)");
    cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
    if (threads) {
        cmd->add_option("--threads", c.threads, "Worker threads, 0 for all cores")
            ->capture_default_str();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perimeter defense task allocation simulator"};
    app.require_subcommand(1);

    Common common;
    std::string axis;
    std::string grid;
    int runs = 100;
    int oracle_runs = 500;
    int samples = 200;
    int warmup = 20;
    std::size_t bundle_cap = 0;

    auto* run = app.add_subcommand("run", "Simulate one episode");
    add_common(run, common, true, false);
    auto* trace = app.add_subcommand("trace", "Simulate one episode and log every consensus round");
    add_common(trace, common, true, false);

    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep along one parameter axis");
    add_common(sweep, common, true, true);
    sweep->add_option("--axis", axis, "defender_speed, sensing_radius, separation or intruder_speed")
        ->required();
    sweep->add_option("--grid", grid, "Comma-separated axis values")->required();
    sweep->add_option("--runs", runs, "Episodes per grid value")->capture_default_str();

    auto* bench = app.add_subcommand("bench", "Time allocation rounds for N = 2..5");
    add_common(bench, common, false, false);
    bench->add_option("--samples", samples, "Timed allocations per N")->capture_default_str();
    bench->add_option("--warmup", warmup, "Untimed allocations per N")->capture_default_str();
    bench->add_option("--bundle-cap", bundle_cap, "Tasks per defender, 0 for unlimited")
        ->capture_default_str();

    auto* oracle = app.add_subcommand("oracle-check", "Compare the engine with exact and greedy solvers");
    add_common(oracle, common, false, true);
    oracle->add_option("--runs", oracle_runs, "Random instances")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (*run) return cmd_run(common);
        if (*trace) return cmd_trace(common);
        if (*sweep) return cmd_sweep(common, axis, grid, runs);
        if (*bench) return cmd_bench(common, samples, warmup, bundle_cap);
        if (*oracle) return cmd_oracle_check(common, oracle_runs);
    } catch (const std::exception& e) {
        fmt::print(stderr, "pdef: error: {}\n", e.what());
        return 1;
    }
    return 1;
}
