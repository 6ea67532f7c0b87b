#pragma once

// Uniform entry point over every algorithm, used by the CLI and the bench
// harness.

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fixb/core.hpp"
#include "fixb/milp/backend.hpp"
#include "fixb/milp/formulations.hpp"
#include "fixb/oracle.hpp"
#include "json.hpp"

namespace fixb {

// Raised when a MIP-based algorithm is run without a backend.
class BackendMissing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunRequest {
  std::string algorithm;
  std::uint64_t seed = 0;
  double time_limit = std::numeric_limits<double>::infinity();
  int sft_r = 1;
  double sft_phi = 0.66;
  std::optional<Sequence> order;  // insertion order, or the DP's fixed sequence
  std::int64_t mode_guard = milp::kDefaultModeGuard;
  std::uint64_t oracle_budget = kDefaultOracleBudget;
  std::string dump_lp;  // mip1/mip2: write the model here before solving
};

struct RunResult {
  // "optimal", "feasible", "time_limit", "infeasible" or "error".
  std::string status = "error";
  // Proven optimal for the instance (exact algorithms and MIPs solved to
  // optimality only).
  bool optimal = false;
  std::optional<Solution> solution;
  double seconds = 0.0;  // wall time of the algorithm call
  std::string message;
  nlohmann::json trace = nlohmann::json::object();
};

// oracle, two-job, two-machine-dp, insertion, ra-os, la-os, ia-os, ma-os,
// rs-oa, ms-oa, sft, mip1, mip2.
const std::vector<std::string>& algorithm_names();
bool is_algorithm(std::string_view name);
bool requires_backend(std::string_view algorithm);

// Parameters that distinguish runs of `request.algorithm`, as JSON and as a
// compact "key=value;..." label (empty when there are none).
nlohmann::json request_params(const RunRequest& request);
std::string params_label(const RunRequest& request);

// Throws InvalidInput for unknown algorithms or inputs the algorithm does not
// accept, BackendMissing when a backend is needed but `backend` is null.
// Algorithm failures (budget, time limit without incumbent, backend errors)
// are reported through RunResult::status and message.
RunResult run_algorithm(const Instance& inst, const RunRequest& request, milp::Backend* backend);

}  // namespace fixb
