#include "fixb/milp/backend.hpp"

#include <cmath>
#include <cstdlib>

namespace fixb::milp {

#ifdef FIXB_HAVE_HIGHS
std::unique_ptr<Backend> make_highs_backend();
#endif

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kFeasible: return "feasible";
    case Status::kInfeasible: return "infeasible";
    case Status::kTimeLimit: return "time_limit";
    case Status::kError: return "error";
  }
  return "error";
}

std::vector<std::string> available_backends() {
  std::vector<std::string> names;
#ifdef FIXB_HAVE_HIGHS
  names.push_back("highs");
#endif
  return names;
}

std::unique_ptr<Backend> make_backend(std::string_view name) {
#ifdef FIXB_HAVE_HIGHS
  if (name == "highs") return make_highs_backend();
#endif
  (void)name;
  return nullptr;
}

std::string default_backend_name() {
  if (const char* env = std::getenv(kBackendEnvVar); env && *env) return env;
  auto names = available_backends();
  return names.empty() ? std::string() : names.front();
}

namespace {

SolveOutcome run(const Model& model, Backend* backend, const SolveOptions& options) {
  if (backend == nullptr) {
    SolveOutcome out;
    out.status = Status::kError;
    out.message = "no MILP backend configured (available: " +
                  std::to_string(available_backends().size()) + ")";
    return out;
  }
  SolveOutcome out = backend->solve(model, options);
  if (!options.relax && out.status == Status::kOptimal && model.integral_data()) {
    out.objective = std::round(out.objective);
  }
  return out;
}

}  // namespace

SolveOutcome solve(const Model& model, Backend* backend, double time_limit) {
  return run(model, backend, {time_limit, false});
}

SolveOutcome solve_lp_relaxation(const Model& model, Backend* backend, double time_limit) {
  return run(model, backend, {time_limit, true});
}

}  // namespace fixb::milp
