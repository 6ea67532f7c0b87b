// fixb: command-line front end.
//
//   fixb gen    --set 1 --n 10 --seed 7 --count 10 --out DIR
//   fixb solve  --algo sft --instance FILE [--seed S] [--time-limit T]
//               [--sft-r R] [--sft-phi PHI] [--order 2,5,1] [--budget B] [--out FILE]
//   fixb bench  --config FILE --out DIR
//   fixb gantt  --solution FILE --out FILE.svg [--instance FILE]
//   fixb verify --solution FILE --instance FILE
//
// Exit codes: 0 success, 1 invalid input, 2 backend missing, 3 verification
// failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "fixb/bench.hpp"
#include "fixb/gantt.hpp"
#include "fixb/instgen.hpp"
#include "fixb/io.hpp"
#include "fixb/milp/backend.hpp"
#include "fixb/solvers.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitBackend = 2;
constexpr int kExitVerify = 3;

struct VerifyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::unique_ptr<fixb::milp::Backend> open_backend(const std::string& requested) {
  std::string name = requested.empty() ? fixb::milp::default_backend_name() : requested;
  if (name.empty()) return nullptr;
  auto backend = fixb::milp::make_backend(name);
  if (!backend) throw fixb::BackendMissing("MILP backend '" + name + "' is not available");
  return backend;
}

int run_gen(int set, int n, std::uint64_t seed, int count, const std::string& out) {
  auto paths = fixb::write_batch({set, n, seed, count}, out);
  for (const auto& p : paths) std::cout << p.string() << '\n';
  return 0;
}

int run_solve(fixb::RunRequest request, const std::string& instance_path,
              const std::string& order_text, const std::string& backend_name,
              const std::string& out) {
  fixb::Instance inst = fixb::load_instance(instance_path);
  if (!order_text.empty()) request.order = fixb::parse_sequence(order_text, inst.jobs());
  std::unique_ptr<fixb::milp::Backend> backend;
  if (fixb::requires_backend(request.algorithm)) {
    backend = open_backend(backend_name);
    if (!backend) throw fixb::BackendMissing("no MILP backend is configured");
  }
  fixb::RunResult result = fixb::run_algorithm(inst, request, backend.get());
  std::cerr << request.algorithm << ": status=" << result.status;
  if (result.solution) std::cerr << " makespan=" << result.solution->makespan;
  std::cerr << " time_ms=" << static_cast<std::int64_t>(result.seconds * 1000.0);
  if (!result.message.empty()) std::cerr << " (" << result.message << ")";
  std::cerr << '\n';
  if (!result.solution) return kExitInvalid;

  fixb::SolutionRecord record;
  record.instance = inst.name();
  record.solution = *result.solution;
  record.algorithm = request.algorithm;
  record.params = fixb::request_params(request);
  record.params["status"] = result.status;
  if (backend) record.params["backend"] = backend->name();
  record.time_ms = static_cast<std::int64_t>(result.seconds * 1000.0);
  if (std::string err = fixb::verify_solution(inst, record); !err.empty()) {
    throw VerifyFailure("solution failed re-evaluation: " + err);
  }
  if (out.empty()) {
    std::cout << fixb::dump_canonical(fixb::solution_to_json(record));
  } else {
    fixb::save_solution(record, out);
  }
  return 0;
}

int run_bench(const std::string& config_path, const std::string& out, int workers,
              const std::string& backend_name) {
  fixb::BenchConfig config = fixb::load_bench_config(config_path);
  if (workers > 0) config.workers = workers;
  if (!backend_name.empty()) config.backend = backend_name;
  fixb::BenchResult result = fixb::run_bench_to_dir(config, out);
  std::cout << fixb::aggregates_markdown(result.aggregates);
  if (result.verification_failures > 0) {
    throw VerifyFailure(std::to_string(result.verification_failures) +
                        " record(s) failed re-verification");
  }
  if (result.backend_missing) {
    std::cerr << "warning: MIP-based runs were recorded as backend_missing\n";
    return kExitBackend;
  }
  return 0;
}

int run_gantt(const std::string& solution_path, const std::string& instance_path,
              const std::string& out) {
  fixb::SolutionRecord record = fixb::load_solution(solution_path);
  if (!instance_path.empty()) {
    fixb::Instance inst = fixb::load_instance(instance_path);
    if (std::string err = fixb::verify_solution(inst, record); !err.empty()) {
      throw fixb::InvalidInput("solution does not match the instance: " + err);
    }
    record.solution = fixb::evaluate(inst, record.solution.sequence, record.solution.modes);
  } else if (record.solution.ptimes.rows() != record.solution.starts.rows()) {
    throw fixb::InvalidInput("solution file has no workloads; pass --instance");
  }
  std::ofstream(out) << fixb::gantt_svg(record.solution, record.instance);
  return 0;
}

int run_verify(const std::string& solution_path, const std::string& instance_path) {
  fixb::Instance inst = fixb::load_instance(instance_path);
  fixb::SolutionRecord record = fixb::load_solution(solution_path);
  if (std::string err = fixb::verify_solution(inst, record); !err.empty()) {
    throw VerifyFailure(err);
  }
  std::cout << "ok: makespan " << record.solution.makespan << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blocking flow shop with shiftable operations: solvers and benchmarks"};
  app.require_subcommand(1);

  int set = 1, n = 5, count = 1;
  std::uint64_t seed = 0;
  std::string out, instance_path, solution_path, config_path, order_text, backend_name;
  fixb::RunRequest request;
  int workers = 0;

  auto* gen = app.add_subcommand("gen", "Generate seeded instances");
  gen->add_option("--set", set, "Experiment set (1 or 2)")->check(CLI::IsMember({1, 2}));
  gen->add_option("--n", n, "Jobs per instance")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Batch seed");
  gen->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber);
  gen->add_option("--out", out, "Output directory")->required();

  auto* solve = app.add_subcommand("solve", "Run one algorithm on one instance");
  solve->add_option("--algo", request.algorithm, "Algorithm")
      ->required()
      ->check(CLI::IsMember(fixb::algorithm_names()));
  solve->add_option("--instance", instance_path, "Instance file")->required();
  solve->add_option("--seed", request.seed, "Seed for randomized algorithms");
  solve->add_option("--time-limit", request.time_limit, "Seconds per MIP phase");
  solve->add_option("--sft-r", request.sft_r, "SFT: variables considered per iteration");
  solve->add_option("--sft-phi", request.sft_phi, "SFT: fixing threshold");
  solve->add_option("--order,--sequence", order_text,
                    "Insertion order, or the fixed sequence of two-machine-dp (e.g. 3,1,2)");
  solve->add_option("--budget", request.oracle_budget, "oracle: maximum number of evaluations");
  solve->add_option("--dump-lp", request.dump_lp, "mip1/mip2: write the model in LP format");
  solve->add_option("--out", out, "Solution file (default: stdout)");

  auto* bench = app.add_subcommand("bench", "Run a benchmark grid");
  bench->add_option("--config", config_path, "Bench config file")->required();
  bench->add_option("--out", out, "Output directory")->required();
  bench->add_option("--workers", workers, "Worker threads (overrides the config)");

  auto* gantt = app.add_subcommand("gantt", "Render a solution as SVG");
  gantt->add_option("--solution", solution_path, "Solution file")->required();
  gantt->add_option("--instance", instance_path, "Instance file to re-evaluate against");
  gantt->add_option("--out", out, "SVG file")->required();

  auto* verify = app.add_subcommand("verify", "Re-evaluate a solution file");
  verify->add_option("--solution", solution_path, "Solution file")->required();
  verify->add_option("--instance", instance_path, "Instance file")->required();

  for (auto* sub : {solve, bench}) {
    sub->add_option("--backend", backend_name,
                    std::string("MILP backend (default: $") + fixb::milp::kBackendEnvVar + ")");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (gen->parsed()) return run_gen(set, n, seed, count, out);
    if (solve->parsed()) return run_solve(request, instance_path, order_text, backend_name, out);
    if (bench->parsed()) return run_bench(config_path, out, workers, backend_name);
    if (gantt->parsed()) return run_gantt(solution_path, instance_path, out);
    if (verify->parsed()) return run_verify(solution_path, instance_path);
  } catch (const fixb::BackendMissing& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const VerifyFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerify;
  } catch (const fixb::milp::DecodeError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
