#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixb/milp/model.hpp"

namespace fixb::milp {

enum class Status { kOptimal, kFeasible, kInfeasible, kTimeLimit, kError };

std::string_view to_string(Status status);

struct SolveOutcome {
  Status status = Status::kError;
  double objective = 0.0;
  std::vector<double> values;  // present iff has_values()
  double seconds = 0.0;
  std::optional<double> bound;  // best dual bound, when known
  std::string message;

  bool has_values() const { return !values.empty(); }
  double value(int var) const { return values.at(var); }
};

struct SolveOptions {
  double time_limit = std::numeric_limits<double>::infinity();
  // Solve the LP relaxation: binaries become continuous in [lower, upper].
  bool relax = false;
};

// Adapter around an external MILP solver. One instance serves one thread at
// a time.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  // Parameter summary recorded alongside benchmark output.
  virtual std::string parameters() const = 0;
  virtual SolveOutcome solve(const Model& model, const SolveOptions& options) = 0;
};

// Backends compiled into this build, e.g. {"highs"}.
std::vector<std::string> available_backends();

// Returns nullptr for unknown or unavailable backend names.
std::unique_ptr<Backend> make_backend(std::string_view name);

// Value of FIXB_MILP_BACKEND, else the first available backend, else "".
std::string default_backend_name();

inline constexpr const char* kBackendEnvVar = "FIXB_MILP_BACKEND";

// Delegates to `backend`. A null backend yields Status::kError with a
// message; there is no fallback. With integral model data, an optimal
// objective is rounded to the exact integer.
SolveOutcome solve(const Model& model, Backend* backend,
                   double time_limit = std::numeric_limits<double>::infinity());

SolveOutcome solve_lp_relaxation(const Model& model, Backend* backend,
                                 double time_limit = std::numeric_limits<double>::infinity());

}  // namespace fixb::milp
