#include "pdef/benchmark.hpp"

#include <stdexcept>

#include "pdef/instances.hpp"

namespace pdef {

namespace {

class Fnv1a {
public:
    void add(std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            hash_ ^= (v >> (8 * b)) & 0xffU;
            hash_ *= 0x100000001b3ULL;
        }
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // sample variance
};

Moments moments(const std::vector<double>& xs) {
    Moments m;
    if (xs.empty()) return m;
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return m;
    for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(xs.size() - 1);
    return m;
}

}  // namespace

std::vector<BenchmarkRow> run_timing_benchmark(const BenchmarkOptions& options) {
    if (options.samples < 1 || options.warmup < 0) {
        throw std::invalid_argument("benchmark needs samples >= 1 and warmup >= 0");
    }
    std::vector<BenchmarkRow> rows;
    for (int n : options.n_grid) {
        if (n < 1) throw std::invalid_argument("benchmark N must be positive");
        BenchmarkRow row;
        row.n = n;
        row.samples = options.samples;
        std::vector<double> wall;
        std::vector<double> critical;
        Fnv1a digest;
        long long iterations = 0;
        for (int s = -options.warmup; s < options.samples; ++s) {
            const bool timed = s >= 0;
            const AllocationInstance inst = one_to_one_instance(
                n, mix_seed(options.seed, static_cast<std::uint64_t>(timed ? s : -s - 1) +
                                              (timed ? 0 : 1ULL << 32)));
            AllocationParams params{inst.now, inst.cost, options.max_bundle_size};
            SyncBus bus;
            const auto agents = inst.agent_inputs();
            try {
                const AllocationResult r = allocation_round(agents, params, bus);
                if (!timed) continue;
                ++row.converged;
                iterations += r.iterations;
                wall.push_back(r.wall_seconds);
                critical.push_back(r.critical_path_seconds);
                for (const auto& [task, agent] : r.assignment.winners) {
                    digest.add(static_cast<std::uint64_t>(to_int(task)));
                    digest.add(static_cast<std::uint64_t>(to_int(agent)));
                }
                digest.add(0xffffffffULL);
            } catch (const ConsensusError&) {
                if (timed) digest.add(0xdeadULL);
            }
        }
        row.mean_iterations =
            row.converged > 0 ? static_cast<double>(iterations) / row.converged : 0.0;
        row.assignment_digest = digest.value();
        const Moments w = moments(wall);
        const Moments c = moments(critical);
        row.mean_wall_seconds = w.mean;
        row.var_wall_seconds = w.variance;
        row.mean_critical_path_seconds = c.mean;
        row.var_critical_path_seconds = c.variance;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pdef
