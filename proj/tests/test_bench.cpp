#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixb/bench.hpp"
#include "fixb/gantt.hpp"
#include "fixb/instgen.hpp"
#include "fixb/oracle.hpp"
#include "test_support.hpp"

namespace fixb {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("fixb_test_bench_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

BenchConfig small_config(const std::vector<std::string>& algorithms, int count, int workers = 1) {
  nlohmann::json doc = {
      {"instances", {{"generate", {{"set", 1}, {"n", {3}}, {"seed", 5}, {"count", count}}}}},
      {"seeds", {0}},
      {"workers", workers},
  };
  doc["algorithms"] = nlohmann::json::array();
  for (const auto& a : algorithms) doc["algorithms"].push_back({{"name", a}});
  return bench_config_from_json(doc, ".");
}

TEST(Bench, SingleCellWritesHeaderAndOneRecord) {
  fs::path dir = scratch_dir("single");
  BenchResult r = run_bench_to_dir(small_config({"insertion"}, 1), dir);
  ASSERT_EQ(r.records.size(), 1u);
  auto lines = read_lines(dir / "results.csv");
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], kBenchCsvHeader);
  EXPECT_EQ(lines[1], csv_line(r.records[0]));
  const BenchRecord& rec = r.records[0];
  EXPECT_EQ(rec.instance, generated_name(1, 3, 0));
  EXPECT_EQ(rec.experiment_set, 1);
  EXPECT_EQ(rec.n, 3);
  EXPECT_EQ(rec.status, "feasible");
  ASSERT_TRUE(rec.makespan.has_value());
  ASSERT_EQ(r.aggregates.size(), 1u);
  EXPECT_EQ(r.aggregates[0].runs, 1);
  EXPECT_EQ(r.aggregates[0].mean_makespan, static_cast<double>(*rec.makespan));
  EXPECT_EQ(r.aggregates[0].mean_time_ms, rec.time_ms);
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  EXPECT_TRUE(fs::exists(dir / "summary.md"));
}

TEST(Bench, CsvFieldCount) {
  BenchRecord rec;
  rec.instance = "a,b";
  rec.makespan = 12;
  std::string line = csv_line(rec);
  // The quoted comma is not a separator.
  int separators = 0;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    separators += !quoted && c == ',';
  }
  EXPECT_EQ(separators, 10);
  EXPECT_EQ(line.rfind("\"a,b\"", 0), 0u);
}

TEST(Bench, DeterministicApartFromTimeAndWorkerCount) {
  BenchResult a = run_bench(small_config({"insertion", "oracle"}, 3, 1));
  BenchResult b = run_bench(small_config({"insertion", "oracle"}, 3, 3));
  ASSERT_EQ(a.records.size(), 6u);
  ASSERT_EQ(b.records.size(), 6u);
  for (size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].instance, b.records[i].instance);
    EXPECT_EQ(a.records[i].algorithm, b.records[i].algorithm);
    EXPECT_EQ(a.records[i].status, b.records[i].status);
    EXPECT_EQ(a.records[i].makespan, b.records[i].makespan);
  }
  EXPECT_EQ(a.verification_failures, 0);
}

TEST(Bench, InsertionMeanNotBelowOracleMean) {
  BenchResult r = run_bench(small_config({"insertion", "oracle"}, 4));
  double mean[2] = {0, 0};
  for (const auto& agg : r.aggregates) {
    ASSERT_EQ(agg.solved, agg.runs);
    (agg.algorithm == "oracle" ? mean[0] : mean[1]) = agg.mean_makespan;
  }
  EXPECT_GE(mean[1], mean[0]);
  for (const auto& agg : r.aggregates) {
    if (agg.algorithm == "oracle") EXPECT_EQ(agg.optimal_percent, 100.0);
  }
}

TEST(Bench, AggregateIgnoresRecordOrder) {
  std::vector<BenchRecord> records;
  std::mt19937_64 rng(81);
  for (int i = 0; i < 20; ++i) {
    BenchRecord r;
    r.n = 3 + i % 2;
    r.algorithm = i % 3 ? "insertion" : "sft";
    r.makespan = std::uniform_int_distribution<Time>(100, 400)(rng);
    r.optimal = i % 4 == 0;
    r.time_ms = std::uniform_real_distribution<double>(0.1, 9.0)(rng);
    records.push_back(r);
  }
  records[5].makespan.reset();
  auto base = aggregate(records);
  std::shuffle(records.begin(), records.end(), rng);
  auto shuffled = aggregate(records);
  ASSERT_EQ(base.size(), shuffled.size());
  for (size_t i = 0; i < base.size(); ++i) {
    EXPECT_EQ(base[i].n, shuffled[i].n);
    EXPECT_EQ(base[i].algorithm, shuffled[i].algorithm);
    EXPECT_EQ(base[i].runs, shuffled[i].runs);
    EXPECT_EQ(base[i].solved, shuffled[i].solved);
    EXPECT_EQ(base[i].mean_makespan, shuffled[i].mean_makespan);
    EXPECT_EQ(base[i].mean_time_ms, shuffled[i].mean_time_ms);
    EXPECT_EQ(base[i].optimal_percent, shuffled[i].optimal_percent);
  }
  for (size_t i = 1; i < base.size(); ++i) {
    EXPECT_TRUE(std::tie(base[i - 1].n, base[i - 1].algorithm) < std::tie(base[i].n, base[i].algorithm));
  }
}

TEST(Bench, ConfigErrors) {
  EXPECT_THROW(bench_config_from_json({{"algorithms", {{{"name", "insertion"}}}}}, "."), InvalidInput);
  nlohmann::json doc = {
      {"instances", {{"generate", {{"set", 1}, {"n", 3}, {"count", 1}}}}},
      {"algorithms", nlohmann::json::array()},
  };
  EXPECT_THROW(bench_config_from_json(doc, "."), InvalidInput);
  doc["algorithms"] = {{{"name", "no-such-algorithm"}}};
  EXPECT_THROW(bench_config_from_json(doc, "."), InvalidInput);
  doc["algorithms"] = {{{"name", "insertion"}}};
  EXPECT_NO_THROW(bench_config_from_json(doc, "."));
  doc["workers"] = 0;
  EXPECT_THROW(bench_config_from_json(doc, "."), InvalidInput);
  EXPECT_THROW(load_bench_config("/nonexistent/config.json"), InvalidInput);
}

TEST(Bench, RelativeInstancePathsResolveAgainstConfig) {
  fs::path dir = scratch_dir("paths");
  auto written = write_batch({1, 2, 3, 2}, dir / "inst");
  nlohmann::json doc = {
      {"instances", {{"paths", {"inst/" + written[0].filename().string()}}}},
      {"algorithms", {{{"name", "two-job"}}}},
  };
  std::ofstream(dir / "config.json") << doc.dump();
  BenchConfig config = load_bench_config(dir / "config.json");
  ASSERT_EQ(config.instances.size(), 1u);
  BenchResult r = run_bench(config);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].status, "optimal");
  EXPECT_TRUE(r.records[0].optimal);
}

TEST(Gantt, SingleJobBarsAreEndToEnd) {
  std::mt19937_64 rng(82);
  Instance inst = testing::make_instance(testing::make_layout({4, {1, 2, 0}}), 1, rng);
  Solution sol = evaluate(inst, {{0}}, {{{1, 0, 0}}});
  auto bars = gantt_bars(sol);
  ASSERT_EQ(bars.size(), 4u);
  Time t = 0;
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(bars[k].machine, k);
    EXPECT_EQ(bars[k].start, t);
    EXPECT_EQ(bars[k].end, t + sol.ptimes(0, k));
    EXPECT_EQ(bars[k].blocked_end, bars[k].end);
    t = bars[k].end;
  }
  EXPECT_EQ(t, sol.makespan);
}

TEST(Gantt, TwoMachineEdgesFollowTheSchedule) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = testing::make_instance(testing::make_layout({2, {2}}), 2, rng);
    Solution sol = evaluate(inst, {{1, 0}}, {{{1}}, {{2}}});
    for (const GanttBar& b : gantt_bars(sol)) {
      EXPECT_EQ(b.start, sol.starts(b.position, b.machine));
      EXPECT_EQ(b.end, b.start + sol.ptimes(b.position, b.machine));
      EXPECT_EQ(b.job, sol.sequence.order[b.position]);
      if (b.machine == 0) {
        EXPECT_EQ(b.blocked_end, sol.starts(b.position, 1));
      } else {
        EXPECT_EQ(b.blocked_end, b.end);
      }
    }
    std::string svg = gantt_svg(sol, "t");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    size_t ops = 0;
    for (size_t p = svg.find("class=\"op\""); p != std::string::npos; p = svg.find("class=\"op\"", p + 1)) ++ops;
    EXPECT_EQ(ops, 4u);
  }
}

TEST(Gantt, EmptySolutionThrows) {
  Solution empty;
  EXPECT_THROW(gantt_bars(empty), InvalidInput);
  EXPECT_THROW(gantt_svg(empty, "x"), InvalidInput);
}

}  // namespace
}  // namespace fixb
