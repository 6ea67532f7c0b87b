#pragma once

// Benchmark grid: instances x algorithms x seeds, executed by a worker pool.
//
// Config (JSON):
//   {"instances": {"paths": ["a.json", ...]}                         or
//    "instances": {"generate": {"set": 1, "n": [10, 20], "seed": 7, "count": 10}},
//    "algorithms": [{"name": "insertion"}, {"name": "sft", "r": 1, "phi": 0.66}, ...],
//    "time_limit": 60, "seeds": [0], "workers": 1, "backend": "highs",
//    "oracle_budget": 50000000, "mode_guard": 5000}
// Relative instance paths resolve against the config file's directory.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fixb/core.hpp"
#include "fixb/solvers.hpp"
#include "json.hpp"

namespace fixb {

inline constexpr const char* kBenchCsvHeader =
    "instance,set,n,algorithm,params,seed,backend,status,optimal,makespan,time_ms";

struct BenchConfig {
  std::vector<Instance> instances;
  std::vector<RunRequest> algorithms;  // seed is overridden per run
  std::vector<std::uint64_t> seeds{0};
  int workers = 1;
  std::string backend;  // empty: default backend
};

// Parses a config document; `base` resolves relative instance paths. Throws
// InvalidInput on malformed configs or when there is no instance or no
// algorithm.
BenchConfig bench_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base);
BenchConfig load_bench_config(const std::filesystem::path& path);

struct BenchRecord {
  std::string instance;
  int experiment_set = 0;  // 0 when unknown
  int n = 0;
  std::string algorithm;
  std::string params;
  std::uint64_t seed = 0;
  std::string backend;
  std::string status;
  bool optimal = false;
  std::optional<Time> makespan;
  double time_ms = 0.0;
  std::string message;
};

struct BenchAggregate {
  int n = 0;
  std::string algorithm;
  std::string params;
  int runs = 0;
  int solved = 0;  // runs with a makespan
  double mean_makespan = 0.0;
  double mean_time_ms = 0.0;
  double optimal_percent = 0.0;
};

struct BenchResult {
  std::vector<BenchRecord> records;  // grid order
  std::vector<BenchAggregate> aggregates;
  int verification_failures = 0;
  bool backend_missing = false;  // a MIP-based algorithm ran without a backend
};

std::string csv_line(const BenchRecord& record);

// Grouped by (n, algorithm, params), sorted by that key.
std::vector<BenchAggregate> aggregate(const std::vector<BenchRecord>& records);

// Runs the grid. When `csv_path` is set, records are appended there in grid
// order as soon as they and all earlier cells are done. Every returned
// makespan is re-verified with evaluate(); a mismatch turns the record's
// status into "verification_failed".
BenchResult run_bench(const BenchConfig& config,
                      const std::optional<std::filesystem::path>& csv_path = std::nullopt);

// Writes results.csv, summary.csv and summary.md into `dir`.
BenchResult run_bench_to_dir(const BenchConfig& config, const std::filesystem::path& dir);

std::string aggregates_csv(const std::vector<BenchAggregate>& rows);
std::string aggregates_markdown(const std::vector<BenchAggregate>& rows);

}  // namespace fixb
