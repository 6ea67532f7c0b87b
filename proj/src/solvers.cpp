#include "fixb/solvers.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fixb/exact.hpp"
#include "fixb/insertion.hpp"
#include "fixb/matheuristics.hpp"

namespace fixb {

namespace {

using Clock = std::chrono::steady_clock;

nlohmann::json trace_to_json(const MatheuristicTrace& trace) {
  nlohmann::json phases = nlohmann::json::array();
  for (const PhaseRecord& p : trace.phases) {
    phases.push_back({{"name", p.name},
                      {"status", std::string(milp::to_string(p.status))},
                      {"seconds", p.seconds},
                      {"objective", p.objective}});
  }
  return {{"seed", trace.seed},
          {"phases", phases},
          {"lp_solves", trace.lp_solves},
          {"fixing_rounds", trace.fixing_rounds},
          {"fixed_variables", trace.fixed_variables},
          {"phase_seconds", trace.seconds()}};
}

void dump_model(const milp::Model& model, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  model.write_lp(out);
}

template <typename Mip>
RunResult run_mip(const Instance& inst, const RunRequest& request, milp::Backend& backend,
                  Mip mip) {
  dump_model(mip.model, request.dump_lp);
  milp::SolveOutcome out = milp::solve(mip.model, &backend, request.time_limit);
  RunResult result;
  result.status = std::string(milp::to_string(out.status));
  result.message = out.message;
  result.trace = {{"variables", mip.model.variable_count()},
                  {"constraints", mip.model.constraint_count()},
                  {"objective", out.objective},
                  {"solver_seconds", out.seconds}};
  if (out.bound) result.trace["bound"] = *out.bound;
  if (out.has_values()) {
    result.solution = milp::decode(inst, mip, out);
    result.optimal = out.status == milp::Status::kOptimal;
  }
  return result;
}

}  // namespace

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{
      "oracle", "two-job", "two-machine-dp", "insertion", "ra-os", "la-os", "ia-os",
      "ma-os",  "rs-oa",   "ms-oa",          "sft",       "mip1",  "mip2"};
  return names;
}

bool is_algorithm(std::string_view name) {
  for (const auto& n : algorithm_names()) {
    if (n == name) return true;
  }
  return false;
}

bool requires_backend(std::string_view algorithm) {
  return parse_matheuristic(algorithm).has_value() || algorithm == "mip1" || algorithm == "mip2";
}

nlohmann::json request_params(const RunRequest& request) {
  nlohmann::json params = nlohmann::json::object();
  const std::string& a = request.algorithm;
  if (a == "sft") {
    params["r"] = request.sft_r;
    params["phi"] = request.sft_phi;
  }
  if (a == "ra-os" || a == "rs-oa" || (a == "insertion" && !request.order)) {
    params["seed"] = request.seed;
  }
  if (request.order && (a == "insertion" || a == "two-machine-dp")) {
    std::string text;
    for (int j : request.order->order) text += (text.empty() ? "" : ",") + std::to_string(j + 1);
    params["order"] = text;
  }
  if (requires_backend(a) && std::isfinite(request.time_limit)) {
    params["time_limit"] = request.time_limit;
  }
  return params;
}

std::string params_label(const RunRequest& request) {
  std::string label;
  auto add = [&](const std::string& key, const std::string& value) {
    label += (label.empty() ? "" : ";") + key + "=" + value;
  };
  if (request.algorithm == "sft") {
    std::ostringstream phi;
    phi << request.sft_phi;
    add("r", std::to_string(request.sft_r));
    add("phi", phi.str());
  }
  if (request.order && (request.algorithm == "insertion" || request.algorithm == "two-machine-dp")) {
    add("order", request_params(request)["order"].get<std::string>());
  }
  return label;
}

RunResult run_algorithm(const Instance& inst, const RunRequest& request, milp::Backend* backend) {
  const std::string& algo = request.algorithm;
  if (!is_algorithm(algo)) throw InvalidInput("unknown algorithm '" + algo + "'");
  if (requires_backend(algo) && backend == nullptr) {
    throw BackendMissing(algo + " needs a MILP backend, none is configured");
  }
  require_valid(inst);

  const auto start = Clock::now();
  RunResult result;
  try {
    if (algo == "oracle") {
      OracleResult r = brute_force(inst, request.oracle_budget);
      result.solution = std::move(r.solution);
      result.status = "optimal";
      result.optimal = true;
      result.trace = {{"evaluations", r.evaluations}};
    } else if (algo == "two-job") {
      TwoJobResult r = solve_two_jobs(inst);
      result.solution = std::move(r.solution);
      result.status = "optimal";
      result.optimal = true;
      result.trace = {{"nodes", r.stats.nodes}, {"arcs", r.stats.arcs}, {"labels", r.stats.labels}};
    } else if (algo == "two-machine-dp") {
      Sequence seq;
      if (request.order) {
        seq = *request.order;
      } else {
        for (int j = 0; j < inst.jobs(); ++j) seq.order.push_back(j);
      }
      result.solution = solve_two_machine_fixed_sequence(inst, seq);
      // Optimal for the given sequence only.
      result.status = "feasible";
    } else if (algo == "insertion") {
      result.solution = insertion_heuristic(inst, request.order, request.seed);
      result.status = "feasible";
    } else if (auto mh = parse_matheuristic(algo)) {
      MatheuristicParams params;
      params.algorithm = *mh;
      params.seed = request.seed;
      params.time_limit = request.time_limit;
      params.sft_r = request.sft_r;
      params.sft_phi = request.sft_phi;
      params.mode_guard = request.mode_guard;
      MatheuristicResult r = run_matheuristic(inst, params, *backend);
      result.solution = std::move(r.solution);
      result.status = r.status == milp::Status::kTimeLimit ? "time_limit" : "feasible";
      result.trace = trace_to_json(r.trace);
    } else if (algo == "mip1") {
      result = run_mip(inst, request, *backend, milp::build_mip1(inst));
    } else {
      result = run_mip(inst, request, *backend, milp::build_mip2(inst, request.mode_guard));
    }
  } catch (const MatheuristicError& e) {
    result.status = "error";
    result.message = e.what();
    result.trace = trace_to_json(e.trace());
  } catch (const BudgetExceeded& e) {
    result.status = "error";
    result.message = e.what();
  } catch (const milp::ModeGuardExceeded& e) {
    result.status = "error";
    result.message = e.what();
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace fixb
