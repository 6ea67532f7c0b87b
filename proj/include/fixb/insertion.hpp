#pragma once

// Constructive insertion heuristic. Jobs enter one at a time at the position
// of least makespan; after each insertion the modes of the inserted job and
// every job behind it are re-chosen greedily, boundary by boundary.

#include <cstdint>
#include <optional>

#include "fixb/core.hpp"

namespace fixb {

// A schedule of a subset of the jobs. `solution.sequence` lists only the
// scheduled jobs; `solution.modes` stays indexed by job id and is meaningful
// for scheduled jobs only. Starts and workloads have one row per position.
struct PartialSchedule {
  Solution solution;

  int size() const { return solution.sequence.size(); }
};

PartialSchedule empty_schedule(const Instance& inst);

// Earliest starts of the partial schedule's (sequence, modes).
void reevaluate(const Instance& inst, PartialSchedule& schedule);

// Places `job` at position h (0 <= h <= size, after the first h jobs) and
// re-chooses the splits of positions h..size. Throws InvalidInput when h is
// out of range or the job is already scheduled.
PartialSchedule insert(const Instance& inst, const PartialSchedule& schedule, int job, int h);

// Jobs are taken in `order` (default: a permutation drawn from `seed`); each
// goes to the position of least makespan, ties to the smallest position.
Solution insertion_heuristic(const Instance& inst, const std::optional<Sequence>& order,
                             std::uint64_t seed);

// The default processing order for `seed`.
Sequence insertion_order(int jobs, std::uint64_t seed);

}  // namespace fixb
