#include "fixb/insertion.hpp"

#include <algorithm>
#include <limits>

#include "fixb/rng.hpp"

namespace fixb {

namespace {

constexpr std::uint64_t kInsertionOrderStream = 3;

// Chooses the splits of one job at position p, given the rows above it, and
// writes the splits and that row's starts and workloads.
void greedy_row(const Layout& layout, const JobTimes& times, const Time* prev_s, const Time* prev_p,
                Time* s, Time* p, int* splits) {
  const int m = layout.machines();
  // Earliest start on machine k from the previous row alone.
  auto row_bound = [&](int k) -> Time {
    if (prev_s == nullptr) return 0;
    Time t = prev_s[k] + prev_p[k];
    if (k + 1 < m) t = std::max(t, prev_s[k + 1]);
    return t;
  };
  s[0] = row_bound(0);
  for (int k = 0; k + 1 < m; ++k) {
    const Time fixed = times.mandatory(k) + (k > 0 ? times.downstream(k - 1, splits[k - 1]) : 0);
    const Time next_bound = row_bound(k + 1);
    Time best = std::numeric_limits<Time>::max();
    int best_l = 0;
    for (int l = 0; l <= layout.shiftable_count(k); ++l) {
      const Time start_next = std::max(s[k] + fixed + times.upstream(k, l), next_bound);
      const Time done = start_next + times.downstream(k, l) + times.mandatory(k + 1);
      if (done <= best) {
        best = done;
        best_l = l;
      }
    }
    splits[k] = best_l;
    p[k] = fixed + times.upstream(k, best_l);
    s[k + 1] = std::max(s[k] + p[k], next_bound);
  }
  p[m - 1] = times.mandatory(m - 1) + (m > 1 ? times.downstream(m - 2, splits[m - 2]) : 0);
}

// Makespan of inserting `job` at h, computed in scratch rows (row r holds
// position r) without building the schedule.
Time candidate_makespan(const Layout& layout, const std::vector<JobTimes>& times, const Solution& cur,
                        int job, int h, Matrix<Time>& s, Matrix<Time>& p, std::vector<int>& splits) {
  const int size = cur.sequence.size(), m = layout.machines();
  for (int r = h; r <= size; ++r) {
    const int j = r == h ? job : cur.sequence.order[r - 1];
    const Time* prev_s = nullptr;
    const Time* prev_p = nullptr;
    if (r == h && h > 0) {
      prev_s = cur.starts.row(h - 1).data();
      prev_p = cur.ptimes.row(h - 1).data();
    } else if (r > h) {
      prev_s = s.row(r - 1).data();
      prev_p = p.row(r - 1).data();
    }
    greedy_row(layout, times[j], prev_s, prev_p, s.row(r).data(), p.row(r).data(), splits.data());
  }
  return s(size, m - 1) + p(size, m - 1);
}

PartialSchedule insert_with(const Instance& inst, const std::vector<JobTimes>& times,
                            const PartialSchedule& schedule, int job, int h) {
  const int size = schedule.size(), m = inst.machines();
  const Solution& old = schedule.solution;
  PartialSchedule out;
  Solution& sol = out.solution;
  sol.modes = old.modes;
  sol.sequence.order = old.sequence.order;
  sol.sequence.order.insert(sol.sequence.order.begin() + h, job);
  sol.starts = Matrix<Time>(size + 1, m);
  sol.ptimes = Matrix<Time>(size + 1, m);
  for (int r = 0; r < h; ++r) {
    std::ranges::copy(old.starts.row(r), sol.starts.row(r).begin());
    std::ranges::copy(old.ptimes.row(r), sol.ptimes.row(r).begin());
  }
  for (int r = h; r <= size; ++r) {
    const int j = sol.sequence.order[r];
    const Time* prev_s = r > 0 ? sol.starts.row(r - 1).data() : nullptr;
    const Time* prev_p = r > 0 ? sol.ptimes.row(r - 1).data() : nullptr;
    sol.modes[j].splits.assign(inst.layout().boundary_count(), 0);
    greedy_row(inst.layout(), times[j], prev_s, prev_p, sol.starts.row(r).data(),
               sol.ptimes.row(r).data(), sol.modes[j].splits.data());
  }
  sol.makespan = sol.starts(size, m - 1) + sol.ptimes(size, m - 1);
  return out;
}

void check_insert(const Instance& inst, const PartialSchedule& schedule, int job, int h) {
  if (job < 0 || job >= inst.jobs()) throw InvalidInput("job index out of range");
  if (h < 0 || h > schedule.size()) {
    throw InvalidInput("insertion position " + std::to_string(h) + " outside [0, " +
                       std::to_string(schedule.size()) + "]");
  }
  const auto& order = schedule.solution.sequence.order;
  if (std::ranges::find(order, job) != order.end()) {
    throw InvalidInput("job " + std::to_string(job + 1) + " is already scheduled");
  }
}

}  // namespace

PartialSchedule empty_schedule(const Instance& inst) {
  PartialSchedule schedule;
  schedule.solution.modes.assign(inst.jobs(), AssignmentMode{});
  schedule.solution.starts = Matrix<Time>(0, inst.machines());
  schedule.solution.ptimes = Matrix<Time>(0, inst.machines());
  return schedule;
}

void reevaluate(const Instance& inst, PartialSchedule& schedule) {
  Solution& sol = schedule.solution;
  const int size = schedule.size(), m = inst.machines();
  sol.ptimes = Matrix<Time>(size, m);
  for (int r = 0; r < size; ++r) {
    const int j = sol.sequence.order[r];
    auto loads = mode_workloads(inst, j, sol.modes[j]);
    std::ranges::copy(loads, sol.ptimes.row(r).begin());
  }
  sol.makespan = earliest_starts(sol.ptimes, sol.starts);
}

PartialSchedule insert(const Instance& inst, const PartialSchedule& schedule, int job, int h) {
  check_insert(inst, schedule, job, h);
  std::vector<JobTimes> times;
  times.reserve(inst.jobs());
  for (int j = 0; j < inst.jobs(); ++j) times.emplace_back(inst, j);
  return insert_with(inst, times, schedule, job, h);
}

Sequence insertion_order(int jobs, std::uint64_t seed) {
  return {Rng(derive_stream_seed(seed, {kInsertionOrderStream})).permutation(jobs)};
}

Solution insertion_heuristic(const Instance& inst, const std::optional<Sequence>& order,
                             std::uint64_t seed) {
  require_valid(inst);
  const Sequence seq = order ? *order : insertion_order(inst.jobs(), seed);
  if (!is_permutation_of_jobs(seq, inst.jobs())) {
    throw InvalidInput("processing order is not a permutation of the jobs");
  }
  std::vector<JobTimes> times;
  times.reserve(inst.jobs());
  for (int j = 0; j < inst.jobs(); ++j) times.emplace_back(inst, j);

  const int n = inst.jobs(), m = inst.machines();
  Matrix<Time> scratch_s(n, m), scratch_p(n, m);
  std::vector<int> splits(inst.layout().boundary_count());
  PartialSchedule current = empty_schedule(inst);
  for (int job : seq.order) {
    int best_h = 0;
    Time best = std::numeric_limits<Time>::max();
    for (int h = 0; h <= current.size(); ++h) {
      const Time c = candidate_makespan(inst.layout(), times, current.solution, job, h, scratch_s,
                                        scratch_p, splits);
      if (c < best) {
        best = c;
        best_h = h;
      }
    }
    current = insert_with(inst, times, current, job, best_h);
  }
  // Unscheduled jobs cannot remain; re-derive the schedule through the
  // evaluator so the result carries the same starts any consumer would.
  return evaluate(inst, current.solution.sequence, current.solution.modes);
}

}  // namespace fixb
