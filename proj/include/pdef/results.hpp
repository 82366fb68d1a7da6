#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdef/benchmark.hpp"
#include "pdef/episode.hpp"
#include "pdef/monte_carlo.hpp"
#include "pdef/oracle_check.hpp"

namespace pdef {

// Layout of every file is documented in docs/result_schema.md. Deterministic
// payloads never contain wall-clock figures; those go to *_timing.csv.
inline constexpr int kResultSchemaVersion = 1;

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string episode_json(const EpisodeResult& result);
std::string timeline_csv(const EpisodeResult& result);
std::string sweep_csv(const SweepResult& result);
std::string episodes_csv(const SweepResult& result);
std::string sweep_timing_csv(const SweepResult& result);
std::string bench_csv(const std::vector<BenchmarkRow>& rows);
std::string bench_timing_csv(const std::vector<BenchmarkRow>& rows);
std::string oracle_check_json(const OracleCheckReport& report);

// Creates `dir` if needed and writes the named files. Throw OutputError
// naming the path on failure.
void write_episode(const std::filesystem::path& dir, const EpisodeResult& result);
void write_sweep(const std::filesystem::path& dir, const SweepResult& result);
void write_benchmark(const std::filesystem::path& dir, const std::vector<BenchmarkRow>& rows);
void write_oracle_check(const std::filesystem::path& dir, const OracleCheckReport& report);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pdef
