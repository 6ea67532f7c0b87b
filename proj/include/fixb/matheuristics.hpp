#pragma once

// MIP-guided heuristics. The assignment-first family (RA/LA/IA/MA-OS) fixes
// every job's mode and then sequences with MIP1; the sequence-first family
// (RS/MS-OA) fixes the sequence and then assigns with MIP1; SFT fixes MIP2
// position variables from repeated LP relaxations.

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

namespace fixb {

enum class Matheuristic { kRaOs, kLaOs, kIaOs, kMaOs, kRsOa, kMsOa, kSft };

// "ra-os", "la-os", ..., "sft".
std::string_view to_string(Matheuristic algo);
std::optional<Matheuristic> parse_matheuristic(std::string_view name);

struct MatheuristicParams {
  Matheuristic algorithm = Matheuristic::kMaOs;
  std::uint64_t seed = 0;
  double time_limit = std::numeric_limits<double>::infinity();  // per MIP phase, seconds
  int sft_r = 1;
  double sft_phi = 0.66;
  std::int64_t mode_guard = milp::kDefaultModeGuard;

  // Throws InvalidInput unless 1 <= sft_r <= jobs and 0 < sft_phi <= 1.
  void validate(int jobs) const;
};

struct PhaseRecord {
  std::string name;  // "lp", "sequencing", "assignment", "final-mip", ...
  milp::Status status = milp::Status::kError;
  double seconds = 0.0;
  double objective = 0.0;
};

struct MatheuristicTrace {
  std::uint64_t seed = 0;
  std::vector<PhaseRecord> phases;
  int lp_solves = 0;
  int fixing_rounds = 0;  // SFT and IA-OS iterations that fixed at least one variable
  int fixed_variables = 0;
  std::vector<AssignmentMode> phase1_modes;  // assignment-first only
  std::optional<Sequence> phase1_sequence;   // sequence-first only

  // Sum of phase times.
  double seconds() const;
};

struct MatheuristicResult {
  Solution solution;
  // Status of the last MIP phase: kOptimal, or kTimeLimit/kFeasible with an
  // incumbent.
  milp::Status status = milp::Status::kError;
  MatheuristicTrace trace;
};

// Backend failure, a phase without an incumbent, or an infeasible LP after
// fixings. Carries the trace up to the failing phase.
class MatheuristicError : public std::runtime_error {
 public:
  MatheuristicError(const std::string& what, MatheuristicTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const MatheuristicTrace& trace() const { return trace_; }

 private:
  MatheuristicTrace trace_;
};

// Phase-1 modes of the solver-free strategies.
std::vector<AssignmentMode> random_modes(const Instance& inst, std::uint64_t seed);
// Per job, the mode of least total processing time; ties go to the
// lexicographically first split vector.
std::vector<AssignmentMode> min_time_modes(const Instance& inst);

// Per block, the split maximizing agreement with fractional y values of the
// MIP1 relaxation; ties go to the larger split.
std::vector<AssignmentMode> round_lp_modes(const Instance& inst, const milp::Mip1& mip,
                                           const std::vector<double>& values);

MatheuristicResult assignment_first(const Instance& inst, const MatheuristicParams& params,
                                    milp::Backend& backend);
MatheuristicResult sequence_first(const Instance& inst, const MatheuristicParams& params,
                                  milp::Backend& backend);
MatheuristicResult sft(const Instance& inst, const MatheuristicParams& params,
                       milp::Backend& backend);

// Dispatches on params.algorithm.
MatheuristicResult run_matheuristic(const Instance& inst, const MatheuristicParams& params,
                                    milp::Backend& backend);

}  // namespace fixb
