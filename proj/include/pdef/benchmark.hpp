#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace pdef {

struct BenchmarkOptions {
    std::vector<int> n_grid{2, 3, 4, 5};
    int samples = 200;  // timed allocations per N
    int warmup = 20;    // untimed allocations per N
    std::uint64_t seed = 1;
    std::size_t max_bundle_size = std::numeric_limits<std::size_t>::max();
};

struct BenchmarkRow {
    int n = 0;
    int samples = 0;
    int converged = 0;
    double mean_iterations = 0.0;
    std::uint64_t assignment_digest = 0;  // FNV-1a over every sample's assignment
    // Timing only.
    double mean_wall_seconds = 0.0;
    double var_wall_seconds = 0.0;
    double mean_critical_path_seconds = 0.0;
    double var_critical_path_seconds = 0.0;
};

// Times allocation_round on one_to_one_instance(n, mix_seed(seed, sample))
// for every N in the grid. Runs serially so samples do not contend.
std::vector<BenchmarkRow> run_timing_benchmark(const BenchmarkOptions& options);

}  // namespace pdef
