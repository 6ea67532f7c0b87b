#include "fixb/bench.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "fixb/instgen.hpp"
#include "fixb/io.hpp"

namespace fixb {

namespace {

std::string format_fixed(double x, int digits) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << x;
  return out.str();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

int experiment_set_of(const Instance& inst) {
  const auto& meta = inst.meta();
  if (meta.contains("experiment_set") && meta["experiment_set"].is_number_integer()) {
    return meta["experiment_set"].get<int>();
  }
  return 0;
}

RunRequest request_from_json(const nlohmann::json& a, double time_limit,
                             std::uint64_t oracle_budget, std::int64_t mode_guard) {
  if (!a.is_object() || !a.contains("name")) throw InvalidInput("algorithm entries need a name");
  RunRequest r;
  r.algorithm = a["name"].get<std::string>();
  if (!is_algorithm(r.algorithm)) throw InvalidInput("unknown algorithm '" + r.algorithm + "'");
  r.time_limit = a.value("time_limit", time_limit);
  r.sft_r = a.value("r", 1);
  r.sft_phi = a.value("phi", 0.66);
  r.oracle_budget = a.value("oracle_budget", oracle_budget);
  r.mode_guard = a.value("mode_guard", mode_guard);
  return r;
}

}  // namespace

BenchConfig bench_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base) {
  BenchConfig config;
  try {
    const auto& inst = doc.at("instances");
    if (inst.contains("paths")) {
      for (const auto& p : inst["paths"]) {
        std::filesystem::path path = p.get<std::string>();
        if (path.is_relative()) path = base / path;
        config.instances.push_back(load_instance(path));
      }
    }
    if (inst.contains("generate")) {
      const auto& g = inst["generate"];
      std::vector<int> sizes;
      if (g.at("n").is_array()) {
        sizes = g["n"].get<std::vector<int>>();
      } else {
        sizes.push_back(g["n"].get<int>());
      }
      for (int n : sizes) {
        GenSpec spec{g.value("set", 1), n, g.value("seed", std::uint64_t{0}), g.value("count", 1)};
        for (Instance& i : generate(spec)) config.instances.push_back(std::move(i));
      }
    }
    const double time_limit = doc.value("time_limit", std::numeric_limits<double>::infinity());
    const auto budget = doc.value("oracle_budget", kDefaultOracleBudget);
    const auto guard = doc.value("mode_guard", milp::kDefaultModeGuard);
    for (const auto& a : doc.at("algorithms")) {
      config.algorithms.push_back(request_from_json(a, time_limit, budget, guard));
    }
    if (doc.contains("seeds")) config.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();
    config.workers = doc.value("workers", 1);
    config.backend = doc.value("backend", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed bench config: ") + e.what());
  }
  if (config.instances.empty()) throw InvalidInput("bench config lists no instance");
  if (config.algorithms.empty()) throw InvalidInput("bench config lists no algorithm");
  if (config.seeds.empty()) throw InvalidInput("bench config lists no seed");
  if (config.workers < 1) throw InvalidInput("workers must be at least 1");
  return config;
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
  return bench_config_from_json(doc, path.parent_path());
}

std::string csv_line(const BenchRecord& r) {
  std::string line;
  line += csv_field(r.instance) + ",";
  line += (r.experiment_set > 0 ? std::to_string(r.experiment_set) : "") + ",";
  line += std::to_string(r.n) + ",";
  line += csv_field(r.algorithm) + ",";
  line += csv_field(r.params) + ",";
  line += std::to_string(r.seed) + ",";
  line += csv_field(r.backend) + ",";
  line += csv_field(r.status) + ",";
  line += std::string(r.optimal ? "1" : "0") + ",";
  line += (r.makespan ? std::to_string(*r.makespan) : "") + ",";
  line += format_fixed(r.time_ms, 3);
  return line;
}

std::vector<BenchAggregate> aggregate(const std::vector<BenchRecord>& records) {
  struct Acc {
    int runs = 0, solved = 0, optimal = 0;
    Time makespan = 0;
    std::vector<double> times;
  };
  std::map<std::tuple<int, std::string, std::string>, Acc> groups;
  for (const BenchRecord& r : records) {
    Acc& acc = groups[{r.n, r.algorithm, r.params}];
    ++acc.runs;
    acc.optimal += r.optimal;
    acc.times.push_back(r.time_ms);
    if (r.makespan) {
      ++acc.solved;
      acc.makespan += *r.makespan;
    }
  }
  std::vector<BenchAggregate> rows;
  for (auto& [key, acc] : groups) {
    BenchAggregate row;
    std::tie(row.n, row.algorithm, row.params) = key;
    row.runs = acc.runs;
    row.solved = acc.solved;
    row.mean_makespan = acc.solved ? static_cast<double>(acc.makespan) / acc.solved : 0.0;
    // Sum in sorted order so the mean does not depend on record order.
    std::sort(acc.times.begin(), acc.times.end());
    double total = 0.0;
    for (double t : acc.times) total += t;
    row.mean_time_ms = total / acc.runs;
    row.optimal_percent = 100.0 * acc.optimal / acc.runs;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string aggregates_csv(const std::vector<BenchAggregate>& rows) {
  std::string out = "n,algorithm,params,runs,solved,mean_makespan,mean_time_ms,opt_percent\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + csv_field(r.algorithm) + "," + csv_field(r.params) + "," +
           std::to_string(r.runs) + "," + std::to_string(r.solved) + "," +
           format_fixed(r.mean_makespan, 2) + "," + format_fixed(r.mean_time_ms, 3) + "," +
           format_fixed(r.optimal_percent, 1) + "\n";
  }
  return out;
}

std::string aggregates_markdown(const std::vector<BenchAggregate>& rows) {
  std::string out = "| n | algorithm | params | runs | Obj. | Time (ms) | Opt. % |\n";
  out += "|---:|---|---|---:|---:|---:|---:|\n";
  for (const auto& r : rows) {
    out += "| " + std::to_string(r.n) + " | " + r.algorithm + " | " + r.params + " | " +
           std::to_string(r.runs) + " | " +
           (r.solved ? format_fixed(r.mean_makespan, 2) : std::string("-")) + " | " +
           format_fixed(r.mean_time_ms, 3) + " | " + format_fixed(r.optimal_percent, 1) + " |\n";
  }
  return out;
}

BenchResult run_bench(const BenchConfig& config,
                      const std::optional<std::filesystem::path>& csv_path) {
  struct Cell {
    int instance;
    int algorithm;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int i = 0; i < static_cast<int>(config.instances.size()); ++i) {
    for (int a = 0; a < static_cast<int>(config.algorithms.size()); ++a) {
      for (std::uint64_t seed : config.seeds) cells.push_back({i, a, seed});
    }
  }

  const std::string backend_name =
      config.backend.empty() ? milp::default_backend_name() : config.backend;
  std::ofstream csv;
  if (csv_path) {
    csv.open(*csv_path);
    if (!csv) throw InvalidInput("cannot write " + csv_path->string());
    csv << kBenchCsvHeader << '\n' << std::flush;
  }

  BenchResult result;
  result.records.resize(cells.size());
  std::vector<char> done(cells.size(), 0);
  size_t emitted = 0;
  std::mutex mutex;
  std::atomic<size_t> next{0};

  auto worker = [&] {
    std::unique_ptr<milp::Backend> backend = milp::make_backend(backend_name);
    for (size_t c = next++; c < cells.size(); c = next++) {
      const Cell& cell = cells[c];
      const Instance& inst = config.instances[cell.instance];
      RunRequest request = config.algorithms[cell.algorithm];
      request.seed = cell.seed;
      BenchRecord rec;
      rec.instance = inst.name();
      rec.experiment_set = experiment_set_of(inst);
      rec.n = inst.jobs();
      rec.algorithm = request.algorithm;
      rec.params = params_label(request);
      rec.seed = cell.seed;
      rec.backend = requires_backend(request.algorithm) ? backend_name : "";
      bool missing = false;
      try {
        RunResult run = run_algorithm(inst, request, backend.get());
        rec.status = run.status;
        rec.optimal = run.optimal;
        rec.time_ms = run.seconds * 1000.0;
        rec.message = run.message;
        if (run.solution) {
          Solution check = evaluate(inst, run.solution->sequence, run.solution->modes);
          if (check.makespan != run.solution->makespan) {
            rec.status = "verification_failed";
            rec.message = "stored makespan " + std::to_string(run.solution->makespan) +
                          " re-evaluates to " + std::to_string(check.makespan);
          } else {
            rec.makespan = check.makespan;
          }
        }
      } catch (const BackendMissing& e) {
        rec.status = "backend_missing";
        rec.message = e.what();
        missing = true;
      } catch (const std::exception& e) {
        rec.status = "error";
        rec.message = e.what();
      }
      std::lock_guard lock(mutex);
      result.backend_missing |= missing;
      if (rec.status == "verification_failed") ++result.verification_failures;
      result.records[c] = std::move(rec);
      done[c] = 1;
      while (emitted < cells.size() && done[emitted]) {
        if (csv.is_open()) csv << csv_line(result.records[emitted]) << '\n' << std::flush;
        ++emitted;
      }
    }
  };

  const int width = std::max(1, std::min<int>(config.workers, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < width; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  result.aggregates = aggregate(result.records);
  return result;
}

BenchResult run_bench_to_dir(const BenchConfig& config, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  BenchResult result = run_bench(config, dir / "results.csv");
  std::ofstream(dir / "summary.csv") << aggregates_csv(result.aggregates);
  std::ofstream(dir / "summary.md") << aggregates_markdown(result.aggregates);
  return result;
}

}  // namespace fixb
