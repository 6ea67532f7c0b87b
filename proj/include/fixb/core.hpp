#pragma once

// Problem representation for the blocking flow shop with inter-stage
// flexibility, the assignment-mode algebra, and the earliest-start evaluator.
//
// Indexing is 0-based throughout the library: machines 0..m-1, slots
// 0..q-1, jobs 0..n-1, positions 0..n-1. Boundary k sits between machine k
// and machine k+1 (k = 0..m-2). The JSON file formats use 1-based numbering;
// the conversion lives in io.hpp.

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fixb/matrix.hpp"
#include "json.hpp"

namespace fixb {

using Time = std::int64_t;

// Thrown when input data violates a documented precondition.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One operation slot. The eligible machine set is {machine} or, for a
// shiftable slot, {machine, machine + 1}.
struct Slot {
  int machine = 0;
  bool shiftable = false;

  int last_machine() const { return shiftable ? machine + 1 : machine; }
  bool eligible(int k) const { return k == machine || (shiftable && k == machine + 1); }
  bool operator==(const Slot&) const = default;
};

// Machine/operation eligibility structure shared by all jobs.
//
// The derived tables (blocks, single slots) are built leniently by the
// constructor so that malformed layouts can still be inspected by
// validate_layout(); every other operation assumes a valid layout.
class Layout {
 public:
  Layout() = default;
  Layout(int machines, std::vector<Slot> slots);

  int machines() const { return machines_; }
  int slot_count() const { return static_cast<int>(slots_.size()); }
  int boundary_count() const { return machines_ > 0 ? machines_ - 1 : 0; }
  const std::vector<Slot>& slots() const { return slots_; }
  const Slot& slot(int i) const { return slots_[i]; }

  // n_k: number of shiftable slots between machine k and k+1.
  int shiftable_count(int boundary) const {
    return static_cast<int>(blocks_[boundary].size());
  }
  // Slot indices of the shiftable block at `boundary`, in slot order.
  std::span<const int> block(int boundary) const { return blocks_[boundary]; }
  // Index of the unique slot eligible only for `machine`, or -1.
  int single_slot(int machine) const { return singles_[machine]; }

  bool operator==(const Layout& other) const {
    return machines_ == other.machines_ && slots_ == other.slots_;
  }

 private:
  int machines_ = 0;
  std::vector<Slot> slots_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> singles_;
};

// Layout plus strictly positive integer processing times p[j][i][k].
class Instance {
 public:
  Instance() = default;
  Instance(std::string name, Layout layout, int jobs);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const Layout& layout() const { return layout_; }
  int jobs() const { return jobs_; }
  int machines() const { return layout_.machines(); }

  // Duration of slot `slot` of job `job` on machine `machine`. The machine
  // must be eligible for the slot. Unset durations read as 0.
  Time duration(int job, int slot, int machine) const;
  void set_duration(int job, int slot, int machine, Time p);

  // Sum of every stored duration; an upper bound on any start time.
  Time total_duration() const;

  // Free-form provenance (generator seed, experiment set, ...).
  const nlohmann::json& meta() const { return meta_; }
  nlohmann::json& meta() { return meta_; }

 private:
  size_t index(int job, int slot, int machine) const;

  std::string name_;
  Layout layout_;
  int jobs_ = 0;
  std::vector<Time> p_;  // [job][slot][side], side 0 = slot.machine
  nlohmann::json meta_ = nlohmann::json::object();
};

// Per-boundary split counts: splits[k] shiftable operations of block k run on
// the upstream machine k, the remaining n_k - splits[k] on machine k+1.
struct AssignmentMode {
  std::vector<int> splits;

  auto operator<=>(const AssignmentMode&) const = default;
};

// order[h] is the job processed in position h.
struct Sequence {
  std::vector<int> order;

  int size() const { return static_cast<int>(order.size()); }
  bool operator==(const Sequence&) const = default;
};

// Sequence, one mode per job (indexed by job, not position), and the
// earliest-start schedule they induce.
struct Solution {
  Sequence sequence;
  std::vector<AssignmentMode> modes;
  Matrix<Time> starts;  // [position][machine]
  Matrix<Time> ptimes;  // [position][machine]
  Time makespan = 0;
};

struct ValidationIssue {
  std::string code;
  std::string message;
  int slot = -1;
  int job = -1;
  int machine = -1;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate_layout(const Layout& layout);
ValidationReport validate_instance(const Instance& inst);

// Throws InvalidInput carrying the report summary when validation fails.
void require_valid(const Instance& inst);

// |A| = prod_k (n_k + 1).
std::int64_t count_modes(const Layout& layout);

// All split vectors in lexicographic order.
std::vector<AssignmentMode> enumerate_modes(const Layout& layout);

bool is_valid_mode(const Layout& layout, const AssignmentMode& mode);

// Machine of slot `slot` under `mode`.
int assigned_machine(const Layout& layout, const AssignmentMode& mode, int slot);

// p_j^k(l) for k = 0..m-1.
std::vector<Time> mode_workloads(const Instance& inst, int job, const AssignmentMode& mode);

// Prefix sums of one job's block durations, so that the workload of any
// machine under any split pair is available in O(1).
class JobTimes {
 public:
  JobTimes(const Instance& inst, int job);

  Time mandatory(int machine) const { return mandatory_[machine]; }
  // Work that block `boundary` puts on its upstream machine with split l.
  Time upstream(int boundary, int l) const { return up_[boundary][l]; }
  // Work that block `boundary` puts on its downstream machine with split l.
  Time downstream(int boundary, int l) const { return down_[boundary][l]; }
  // Workload of `machine` given the splits of its two adjacent boundaries.
  Time workload(int machine, int split_before, int split_after) const;

 private:
  int machines_;
  std::vector<Time> mandatory_;
  std::vector<std::vector<Time>> up_;
  std::vector<std::vector<Time>> down_;
};

// Enumerated modes with the workload vector of every (job, mode) pair.
class ModeTable {
 public:
  explicit ModeTable(const Instance& inst);

  int mode_count() const { return static_cast<int>(modes_.size()); }
  int machines() const { return machines_; }
  const std::vector<AssignmentMode>& modes() const { return modes_; }
  const AssignmentMode& mode(int l) const { return modes_[l]; }
  std::span<const Time> workloads(int job, int l) const {
    return {loads_.data() + (static_cast<size_t>(job) * modes_.size() + l) * machines_,
            static_cast<size_t>(machines_)};
  }
  Time total(int job, int l) const;
  // Lexicographic rank of `mode`, or -1.
  int index_of(const AssignmentMode& mode) const;

 private:
  int machines_;
  std::vector<AssignmentMode> modes_;
  std::vector<Time> loads_;
};

// Earliest starts of one row given the previous row (empty spans for the
// first position):
//   s[k] = max(s[k-1] + p[k-1], prev_s[k] + prev_p[k], prev_s[k+1]).
void next_row_starts(std::span<const Time> prev_starts, std::span<const Time> prev_ptimes,
                     std::span<const Time> ptimes, std::span<Time> starts);

// Earliest-start schedule for a workload matrix [position][machine]; returns
// the makespan (0 for an empty matrix).
Time earliest_starts(const Matrix<Time>& ptimes, Matrix<Time>& starts);

// Minimum-makespan schedule for the fixed (sequence, modes) choice.
Solution evaluate(const Instance& inst, const Sequence& seq, const std::vector<AssignmentMode>& modes);

// Two-machine makespan from per-position (M1, M2) workloads:
//   p1[0] + sum_{j>0} max(p1[j], p2[j-1]) + p2[n-1].
Time two_machine_closed_form(std::span<const std::pair<Time, Time>> workloads);

bool is_permutation_of_jobs(const Sequence& seq, int jobs);

// Sum of all entries of `ptimes`; makespan of the fully serialized schedule.
Time serialized_bound(const Matrix<Time>& ptimes);

}  // namespace fixb
