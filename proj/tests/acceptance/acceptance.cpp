// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "pdef/allocation.hpp"
#include "pdef/benchmark.hpp"
#include "pdef/cost.hpp"
#include "pdef/episode.hpp"
#include "pdef/instances.hpp"
#include "pdef/monte_carlo.hpp"
#include "pdef/oracle.hpp"
#include "pdef/oracle_check.hpp"
#include "pdef/rng.hpp"
#include "pdef/scenario.hpp"

namespace {

using namespace pdef;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int number;
    std::string name;
    double limit_seconds;  // infinity when the criterion sets none
    std::function<Outcome()> check;
};

bool close(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

Task task_at(int id, Vec2 lambda, double arrival, Vec2 intruder) {
    Task t;
    t.id = TaskId{id};
    t.lambda.position = lambda;
    t.arrival_time = arrival;
    t.intruder_position = intruder;
    t.intruder_speed = 3.0;
    return t;
}

AllocationParams params_of(const AllocationInstance& inst, std::size_t cap) {
    AllocationParams p;
    p.now = inst.now;
    p.cost = inst.cost;
    p.max_bundle_size = cap;
    return p;
}

Outcome conflict_freedom() {
    Rng rng(mix_seed(20240601, 1));
    InstanceSpec spec;  // N 2..4, M 1..6, random partial observability
    int violations = 0;
    int assigned = 0;
    for (int k = 0; k < 1000; ++k) {
        const AllocationInstance inst = random_instance(rng, spec);
        SyncBus bus;
        const AllocationResult r = allocation_round(
            inst.agent_inputs(), params_of(inst, std::numeric_limits<std::size_t>::max()), bus);
        const ConstraintReport c = check_constraints(inst, r.assignment);
        violations += c.duplicate_assignments + c.unobserved_assignments + c.infeasible_paths +
                      c.inconsistent_winners;
        assigned += static_cast<int>(r.assignment.winners.size());
    }
    return {violations == 0,
            fmt::format("1000 instances, {} tasks assigned, {} violations", assigned, violations)};
}

Outcome oracle_agreement() {
    OracleCheckOptions o;
    o.runs = 500;
    o.seed = 1;
    o.threads = std::max(1u, std::thread::hardware_concurrency());
    const OracleCheckReport r = run_oracle_check(o);
    const bool pass = r.violations == 0 && r.non_converged == 0 && r.below_optimum == 0 &&
                      r.subclass_greedy_matches == r.subclass_cases && r.subclass_cases > 0;
    return {pass, fmt::format("{} instances: {} violations, {} below optimum, {} optimal, "
                              "single-task subclass matches greedy {}/{}",
                              r.cases.size(), r.violations, r.below_optimum, r.optimal_cases,
                              r.subclass_greedy_matches, r.subclass_cases)};
}

Outcome case_study() {
    const ScenarioConfig c = load_scenario(resolve_scenario("case_study"));
    const bool setting = c.defender_positions.size() == 3 && c.intruders.max_concurrent == 6 &&
                         c.intruders.speed == 3.0 && c.defender_max_speed == 4.5 &&
                         c.capture_radius == 5.0;
    const EpisodeResult r = run_episode(c);
    std::vector<double> captures;
    for (const TimelineEvent& e : r.timeline) {
        if (e.kind == EventKind::capture) captures.push_back(e.time);
    }
    bool increasing = true;
    for (std::size_t k = 1; k < captures.size(); ++k) increasing &= captures[k] > captures[k - 1];
    const int most = r.captures_per_defender.empty()
                         ? 0
                         : *std::max_element(r.captures_per_defender.begin(),
                                             r.captures_per_defender.end());
    const bool pass = setting && r.captures == r.spawned && r.spawned == c.intruders.total &&
                      r.intrusions == 0 && increasing && most >= 2 &&
                      r.allocation.max_path_length >= 2;
    std::string times;
    for (double t : captures) times += fmt::format("{}{:.1f}", times.empty() ? "" : " ", t);
    return {pass, fmt::format("{}/{} captured, {} intrusions, capture times [{}], most captures "
                              "by one defender {}, longest planned path {}",
                              r.captures, r.spawned, r.intrusions, times, most,
                              r.allocation.max_path_length)};
}

Outcome monte_carlo_trends() {
    const ScenarioConfig base = load_scenario(resolve_scenario("monte_carlo"));
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    constexpr int kRuns = 100;
    struct Sweep {
        std::string label;
        ScenarioConfig config;
        SweepAxis axis;
        std::vector<double> grid;
    };
    std::vector<Sweep> sweeps;
    for (double vi : {1.0, 2.0, 3.0}) {
        sweeps.push_back({fmt::format("defender_speed@V_I={}", vi),
                          apply_axis(base, SweepAxis::intruder_speed, vi), SweepAxis::defender_speed,
                          {1.5, 3.0, 4.5, 6.0, 7.5}});
    }
    sweeps.push_back({"sensing_radius@V_D=6", apply_axis(base, SweepAxis::defender_speed, 6.0),
                      SweepAxis::sensing_radius, {20, 30, 40, 60, 80}});
    sweeps.push_back({"separation@V_D=4.5", apply_axis(base, SweepAxis::defender_speed, 4.5),
                      SweepAxis::separation, {0, 1, 2, 4, 6}});

    bool pass = true;
    std::string detail;
    for (const Sweep& s : sweeps) {
        const SweepResult r = run_monte_carlo(s.config, s.axis, s.grid, kRuns, base.seed, threads);
        const SweepCell& lo = r.cells.front();
        const SweepCell& hi = r.cells.back();
        const double z = two_proportion_z(hi.successes, hi.runs, lo.successes, lo.runs);
        const bool ok = z > kOneSidedZ05;
        pass &= ok;
        std::string rates;
        for (const SweepCell& cell : r.cells) {
            rates += fmt::format("{}{:.2f}", rates.empty() ? "" : " ", cell.success_rate);
        }
        detail += fmt::format("\n    {:<22} rates [{}] z={:.2f} {}", s.label, rates, z,
                              ok ? "ok" : "not significant");
    }
    return {pass, fmt::format("{} runs per cell, one-sided z > {:.4f}{}", kRuns, kOneSidedZ05, detail)};
}

Outcome scaling() {
    BenchmarkOptions o;  // N 2..5, 200 timed samples, 20 warm-up
    const auto rows = run_timing_benchmark(o);
    const BenchmarkRow& n2 = rows.front();
    const BenchmarkRow& n5 = rows.back();
    bool converged = true;
    for (const BenchmarkRow& r : rows) converged &= r.converged == r.samples;
    const double critical = n5.mean_critical_path_seconds / n2.mean_critical_path_seconds;
    const double serial = n5.mean_wall_seconds / n2.mean_wall_seconds;
    const bool pass = converged && critical < 3.0;
    std::string per_n;
    for (const BenchmarkRow& r : rows) {
        per_n += fmt::format("\n    N={} mean {:.2f} us, per-defender critical path {:.2f} us, "
                             "iterations {:.2f}, converged {}/{}",
                             r.n, r.mean_wall_seconds * 1e6, r.mean_critical_path_seconds * 1e6,
                             r.mean_iterations, r.converged, r.samples);
    }
    return {pass, fmt::format("N=5/N=2 critical-path ratio {:.2f} (limit 3), serial ratio {:.2f}{}",
                              critical, serial, per_n)};
}

double reference_path_loss(Vec2 start, double t0, const std::vector<Task>& path) {
    double total = 0.0;
    Vec2 prev = start;
    double prev_t = t0;
    for (const Task& t : path) {
        const double travel = std::hypot(t.lambda.position.x - prev.x, t.lambda.position.y - prev.y);
        const double slack = t.arrival_time - prev_t;
        if (!(slack > 0.0) || !(travel / 4.5 < slack)) return std::numeric_limits<double>::infinity();
        const double spatial = travel + 0.5 * std::hypot(t.lambda.position.x - t.intruder_position.x,
                                                         t.lambda.position.y - t.intruder_position.y);
        total += spatial * (t.arrival_time - t0) * slack;
        prev = t.lambda.position;
        prev_t = t.arrival_time;
    }
    return total;
}

Outcome cost_suite() {
    int failures = 0;
    const auto expect = [&](bool ok) { failures += ok ? 0 : 1; };
    PathContext ctx;
    ctx.params = {0.5, 4.5, TimeOrigin::planning_time};

    const Task t1 = task_at(0, {50, 0}, 10, {80, 0});
    expect(close(spatial_loss(ctx, t1, 0), 65.0));
    PathContext at = ctx;
    at.start_position = {50, 0};
    expect(close(spatial_loss(at, t1, 0), 15.0));
    PathContext two = ctx;
    two.path.push_back(t1);
    expect(close(spatial_loss(two, task_at(1, {0, 50}, 30, {0, 80}), 1), 50 * std::sqrt(2.0) + 15));

    PathContext after = ctx;
    after.path.push_back(task_at(0, {0, 0}, 4, {0, -30}));
    expect(feasible(after, task_at(1, {20, 0}, 10, {50, 0}), 1));
    expect(!feasible(after, task_at(1, {30, 0}, 10, {50, 0}), 1));
    expect(close(temporal_loss(after, task_at(1, {20, 0}, 10, {50, 0}), 1), 60.0));
    expect(close(temporal_loss(ctx, task_at(0, {20, 0}, 10, {50, 0}), 0), 100.0));
    PathContext late = after;
    late.path[0].arrival_time = 11;
    expect(temporal_loss(late, task_at(1, {20, 0}, 10, {50, 0}), 1) == kInfeasible);

    PathContext fast = after;
    fast.params.max_speed = 10;
    const Task t2 = task_at(1, {50, 0}, 10, {80, 0});
    expect(close(composite_loss(fast, t2, 1), 3900.0));
    expect(composite_loss(after, t2, 1) == kInfeasible);
    expect(path_loss(ctx) == 0.0);

    Rng rng(mix_seed(6, 6));
    int compared = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        PathContext c = ctx;
        c.start_position = {rng.uniform(-40, 40), rng.uniform(-40, 40)};
        c.start_time = rng.uniform(0, 5);
        const auto random_task = [&](int id) {
            const double a = rng.uniform(0, 2 * 3.141592653589793);
            const Vec2 l{50 * std::cos(a), 50 * std::sin(a)};
            const double d = rng.uniform(5, 60);
            return task_at(id, l, c.start_time + d / 3.0, l * (1.0 + d / 50.0));
        };
        const int size = static_cast<int>(rng.uniform(0.0, 4.0));
        for (int k = 0; k < size; ++k) c.path.push_back(random_task(k));
        std::sort(c.path.begin(), c.path.end(),
                  [](const Task& a, const Task& b) { return a.arrival_time < b.arrival_time; });
        const Task j = random_task(9);
        const double base = reference_path_loss(c.start_position, c.start_time, c.path);
        double best = std::numeric_limits<double>::infinity();
        if (std::isfinite(base)) {
            for (std::size_t n = 0; n <= c.path.size(); ++n) {
                std::vector<Task> p = c.path;
                p.insert(p.begin() + static_cast<std::ptrdiff_t>(n), j);
                best = std::min(best, reference_path_loss(c.start_position, c.start_time, p) - base);
            }
        }
        const double got = marginal_insertion_cost(c, j).cost;
        if (std::isinf(best)) {
            expect(got == kInfeasible);
        } else {
            ++compared;
            expect(close(got, best));
        }
    }
    return {failures == 0, fmt::format("{} failed checks; insertion agreed with exhaustive "
                                       "reference on {} finite cases of 2000",
                                       failures, compared)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

// Every non-timing file under `dir`, keyed by relative path.
std::vector<std::pair<std::string, std::string>> payloads(const std::filesystem::path& dir) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const std::string name = e.path().filename().string();
        if (name.ends_with("_timing.csv")) continue;
        out.emplace_back(std::filesystem::relative(e.path(), dir).string(), slurp(e.path()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Outcome determinism() {
    const auto root = std::filesystem::temp_directory_path() / "pdef_acceptance_determinism";
    std::filesystem::remove_all(root);
    const unsigned parallel = std::max(4u, std::thread::hardware_concurrency());
    struct Invocation {
        std::string name;
        std::string args;  // threads appended where supported
        bool threaded;
    };
    const std::vector<Invocation> invocations{
        {"run", "run --scenario case_study --seed 7", false},
        {"trace", "trace --scenario case_study --seed 7", false},
        {"sweep", "sweep --scenario monte_carlo --axis defender_speed --grid 3,4.5,6 --runs 20 --seed 5", true},
        {"bench", "bench --samples 20 --warmup 2 --seed 3", false},
        {"oracle", "oracle-check --runs 60 --seed 4", true},
    };
    bool pass = true;
    std::string detail;
    for (const Invocation& inv : invocations) {
        std::vector<std::vector<std::pair<std::string, std::string>>> results;
        for (int attempt = 0; attempt < 4; ++attempt) {
            const unsigned threads = attempt < 2 ? 1 : parallel;
            const auto out = root / fmt::format("{}_{}", inv.name, attempt);
            std::string cmd = fmt::format("\"{}\" {} --out \"{}\"", PDEF_CLI_PATH, inv.args, out.string());
            if (inv.threaded) cmd += fmt::format(" --threads {}", threads);
            cmd += " > /dev/null";
            if (std::system(cmd.c_str()) != 0) {
                pass = false;
                detail += fmt::format("\n    {}: command failed: {}", inv.name, cmd);
                break;
            }
            results.push_back(payloads(out));
        }
        if (results.size() != 4) continue;
        const bool same = std::all_of(results.begin(), results.end(),
                                      [&](const auto& r) { return r == results.front(); }) &&
                          !results.front().empty();
        pass &= same;
        detail += fmt::format("\n    {:<6} {} payload files, 2 x 1 thread{} {}", inv.name,
                              results.front().size(),
                              inv.threaded ? fmt::format(" + 2 x {} threads", parallel)
                                           : std::string(" + 2 repeats"),
                              same ? "identical" : "DIFFER");
    }
    std::filesystem::remove_all(root);
    return {pass, "repeated CLI invocations with the same seed" + detail};
}

}  // namespace

int main() {
    const double none = std::numeric_limits<double>::infinity();
    const std::vector<Criterion> criteria{
        {1, "conflict-freedom and observability", 30.0, conflict_freedom},
        {2, "oracle agreement at tiny scale", 120.0, oracle_agreement},
        {3, "case-study episode", 10.0, case_study},
        {4, "Monte-Carlo trends", 600.0, monte_carlo_trends},
        {5, "allocation time scaling", 120.0, scaling},
        {6, "cost-module worked examples", 1.0, cost_suite},
        {7, "determinism across thread counts", none, determinism},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, fmt::format("threw: {}", e.what())};
        }
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        const bool in_time = seconds < c.limit_seconds;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        const std::string limit =
            std::isinf(c.limit_seconds) ? std::string() : fmt::format(" / {:.0f} s", c.limit_seconds);
        fmt::print("{} criterion {}: {} ({:.2f} s{}{}) {}\n", pass ? "PASS" : "FAIL", c.number, c.name,
                   seconds, limit, in_time ? "" : ", over time", o.detail);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
               criteria.size());
    return failed == 0 ? 0 : 1;
}
