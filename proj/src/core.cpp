#include "fixb/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fixb {

Layout::Layout(int machines, std::vector<Slot> slots)
    : machines_(machines), slots_(std::move(slots)) {
  blocks_.assign(std::max(machines_ - 1, 0), {});
  singles_.assign(std::max(machines_, 0), -1);
  for (int i = 0; i < slot_count(); ++i) {
    const Slot& s = slots_[i];
    if (s.machine < 0 || s.last_machine() >= machines_) continue;
    if (s.shiftable) {
      blocks_[s.machine].push_back(i);
    } else if (singles_[s.machine] < 0) {
      singles_[s.machine] = i;
    }
  }
}

Instance::Instance(std::string name, Layout layout, int jobs)
    : name_(std::move(name)),
      layout_(std::move(layout)),
      jobs_(jobs),
      p_(static_cast<size_t>(std::max(jobs, 0)) * layout_.slot_count() * 2, 0) {}

size_t Instance::index(int job, int slot, int machine) const {
  const Slot& s = layout_.slot(slot);
  if (job < 0 || job >= jobs_ || !s.eligible(machine)) {
    std::ostringstream msg;
    msg << "no duration for job " << job << ", slot " << slot << ", machine " << machine;
    throw InvalidInput(msg.str());
  }
  int side = machine - s.machine;
  return (static_cast<size_t>(job) * layout_.slot_count() + slot) * 2 + side;
}

Time Instance::duration(int job, int slot, int machine) const {
  return p_[index(job, slot, machine)];
}

void Instance::set_duration(int job, int slot, int machine, Time p) {
  p_[index(job, slot, machine)] = p;
}

Time Instance::total_duration() const {
  return std::accumulate(p_.begin(), p_.end(), Time{0});
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (size_t i = 0; i < issues.size(); ++i) {
    if (i) out << "; ";
    out << issues[i].code << ": " << issues[i].message;
  }
  return out.str();
}

namespace {

// Position of a slot kind along the line: single k -> 2k, shiftable
// {k, k+1} -> 2k + 1. A valid layout lists slots in non-decreasing rank.
int rank_of(const Slot& s) { return 2 * s.machine + (s.shiftable ? 1 : 0); }

}  // namespace

ValidationReport validate_layout(const Layout& layout) {
  ValidationReport report;
  auto add = [&](std::string code, std::string msg, int slot = -1, int machine = -1) {
    report.issues.push_back({std::move(code), std::move(msg), slot, -1, machine});
  };
  const int m = layout.machines();
  if (m < 1) {
    add("machines", "machine count must be at least 1");
    return report;
  }
  std::vector<int> single_count(m, 0);
  bool slots_in_range = true;
  for (int i = 0; i < layout.slot_count(); ++i) {
    const Slot& s = layout.slot(i);
    if (s.machine < 0 || s.last_machine() >= m) {
      add("machine-range", "slot " + std::to_string(i + 1) + " names a machine outside 1.." +
                               std::to_string(m), i);
      slots_in_range = false;
      continue;
    }
    if (!s.shiftable) ++single_count[s.machine];
  }
  for (int k = 0; k < m; ++k) {
    if (single_count[k] == 0) {
      add("missing-single", "no slot is dedicated to machine " + std::to_string(k + 1), -1, k);
    } else if (single_count[k] > 1) {
      add("duplicate-single",
          "machine " + std::to_string(k + 1) + " has " + std::to_string(single_count[k]) +
              " dedicated slots",
          -1, k);
    }
  }
  if (slots_in_range) {
    for (int i = 1; i < layout.slot_count(); ++i) {
      if (rank_of(layout.slot(i)) < rank_of(layout.slot(i - 1))) {
        add("order", "slot " + std::to_string(i + 1) + " precedes a slot of an earlier stage", i);
      }
    }
  }
  return report;
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report = validate_layout(inst.layout());
  if (inst.jobs() < 1) {
    report.issues.push_back({"jobs", "instance must contain at least one job"});
  }
  if (!report.ok()) return report;
  const Layout& layout = inst.layout();
  for (int j = 0; j < inst.jobs(); ++j) {
    for (int i = 0; i < layout.slot_count(); ++i) {
      const Slot& s = layout.slot(i);
      for (int k = s.machine; k <= s.last_machine(); ++k) {
        Time p = inst.duration(j, i, k);
        if (p <= 0) {
          report.issues.push_back(
              {"non-positive", "job " + std::to_string(j + 1) + ", slot " +
                                   std::to_string(i + 1) + ", machine " + std::to_string(k + 1) +
                                   " has processing time " + std::to_string(p),
               i, j, k});
        }
      }
    }
  }
  return report;
}

void require_valid(const Instance& inst) {
  ValidationReport report = validate_instance(inst);
  if (!report.ok()) throw InvalidInput("invalid instance '" + inst.name() + "': " + report.summary());
}

std::int64_t count_modes(const Layout& layout) {
  std::int64_t count = 1;
  for (int k = 0; k < layout.boundary_count(); ++k) count *= layout.shiftable_count(k) + 1;
  return count;
}

std::vector<AssignmentMode> enumerate_modes(const Layout& layout) {
  const int b = layout.boundary_count();
  std::vector<AssignmentMode> modes;
  modes.reserve(static_cast<size_t>(count_modes(layout)));
  AssignmentMode current{std::vector<int>(b, 0)};
  while (true) {
    modes.push_back(current);
    int k = b - 1;
    while (k >= 0 && current.splits[k] == layout.shiftable_count(k)) {
      current.splits[k] = 0;
      --k;
    }
    if (k < 0) break;
    ++current.splits[k];
  }
  return modes;
}

bool is_valid_mode(const Layout& layout, const AssignmentMode& mode) {
  if (static_cast<int>(mode.splits.size()) != layout.boundary_count()) return false;
  for (int k = 0; k < layout.boundary_count(); ++k) {
    if (mode.splits[k] < 0 || mode.splits[k] > layout.shiftable_count(k)) return false;
  }
  return true;
}

int assigned_machine(const Layout& layout, const AssignmentMode& mode, int slot) {
  const Slot& s = layout.slot(slot);
  if (!s.shiftable) return s.machine;
  auto block = layout.block(s.machine);
  int pos = static_cast<int>(std::find(block.begin(), block.end(), slot) - block.begin());
  return pos < mode.splits[s.machine] ? s.machine : s.machine + 1;
}

std::vector<Time> mode_workloads(const Instance& inst, int job, const AssignmentMode& mode) {
  const Layout& layout = inst.layout();
  std::vector<Time> loads(inst.machines(), 0);
  for (int i = 0; i < layout.slot_count(); ++i) {
    int k = assigned_machine(layout, mode, i);
    loads[k] += inst.duration(job, i, k);
  }
  return loads;
}

JobTimes::JobTimes(const Instance& inst, int job) : machines_(inst.machines()) {
  const Layout& layout = inst.layout();
  mandatory_.resize(machines_);
  for (int k = 0; k < machines_; ++k) {
    mandatory_[k] = inst.duration(job, layout.single_slot(k), k);
  }
  up_.resize(layout.boundary_count());
  down_.resize(layout.boundary_count());
  for (int k = 0; k < layout.boundary_count(); ++k) {
    auto block = layout.block(k);
    const int nk = static_cast<int>(block.size());
    up_[k].assign(nk + 1, 0);
    down_[k].assign(nk + 1, 0);
    for (int t = 0; t < nk; ++t) up_[k][t + 1] = up_[k][t] + inst.duration(job, block[t], k);
    for (int t = nk - 1; t >= 0; --t) {
      down_[k][t] = down_[k][t + 1] + inst.duration(job, block[t], k + 1);
    }
  }
}

Time JobTimes::workload(int machine, int split_before, int split_after) const {
  Time w = mandatory_[machine];
  if (machine > 0) w += down_[machine - 1][split_before];
  if (machine < machines_ - 1) w += up_[machine][split_after];
  return w;
}

ModeTable::ModeTable(const Instance& inst)
    : machines_(inst.machines()), modes_(enumerate_modes(inst.layout())) {
  loads_.resize(static_cast<size_t>(inst.jobs()) * modes_.size() * machines_);
  for (int j = 0; j < inst.jobs(); ++j) {
    JobTimes times(inst, j);
    for (size_t l = 0; l < modes_.size(); ++l) {
      const auto& splits = modes_[l].splits;
      Time* out = loads_.data() + (static_cast<size_t>(j) * modes_.size() + l) * machines_;
      for (int k = 0; k < machines_; ++k) {
        out[k] = times.workload(k, k > 0 ? splits[k - 1] : 0,
                                k < machines_ - 1 ? splits[k] : 0);
      }
    }
  }
}

Time ModeTable::total(int job, int l) const {
  auto w = workloads(job, l);
  return std::accumulate(w.begin(), w.end(), Time{0});
}

int ModeTable::index_of(const AssignmentMode& mode) const {
  auto it = std::lower_bound(modes_.begin(), modes_.end(), mode);
  if (it == modes_.end() || *it != mode) return -1;
  return static_cast<int>(it - modes_.begin());
}

void next_row_starts(std::span<const Time> prev_starts, std::span<const Time> prev_ptimes,
                     std::span<const Time> ptimes, std::span<Time> starts) {
  const int m = static_cast<int>(ptimes.size());
  const bool first = prev_starts.empty();
  for (int k = 0; k < m; ++k) {
    Time s = 0;
    if (k > 0) s = starts[k - 1] + ptimes[k - 1];
    if (!first) {
      s = std::max(s, prev_starts[k] + prev_ptimes[k]);
      if (k + 1 < m) s = std::max(s, prev_starts[k + 1]);
    }
    starts[k] = s;
  }
}

Time earliest_starts(const Matrix<Time>& ptimes, Matrix<Time>& starts) {
  starts = Matrix<Time>(ptimes.rows(), ptimes.cols());
  for (int h = 0; h < ptimes.rows(); ++h) {
    if (h == 0) {
      next_row_starts({}, {}, ptimes.row(0), starts.row(0));
    } else {
      next_row_starts(starts.row(h - 1), ptimes.row(h - 1), ptimes.row(h), starts.row(h));
    }
  }
  if (ptimes.rows() == 0) return 0;
  const int n = ptimes.rows(), m = ptimes.cols();
  return starts(n - 1, m - 1) + ptimes(n - 1, m - 1);
}

bool is_permutation_of_jobs(const Sequence& seq, int jobs) {
  if (seq.size() != jobs) return false;
  std::vector<char> seen(jobs, 0);
  for (int j : seq.order) {
    if (j < 0 || j >= jobs || seen[j]) return false;
    seen[j] = 1;
  }
  return true;
}

Solution evaluate(const Instance& inst, const Sequence& seq,
                  const std::vector<AssignmentMode>& modes) {
  const int n = inst.jobs(), m = inst.machines();
  if (!is_permutation_of_jobs(seq, n)) {
    throw InvalidInput("sequence is not a permutation of the " + std::to_string(n) + " jobs");
  }
  if (static_cast<int>(modes.size()) != n) {
    throw InvalidInput("expected " + std::to_string(n) + " assignment modes, got " +
                       std::to_string(modes.size()));
  }
  for (int j = 0; j < n; ++j) {
    if (!is_valid_mode(inst.layout(), modes[j])) {
      throw InvalidInput("assignment mode of job " + std::to_string(j + 1) +
                         " does not match the layout");
    }
  }
  Solution sol;
  sol.sequence = seq;
  sol.modes = modes;
  sol.ptimes = Matrix<Time>(n, m);
  for (int h = 0; h < n; ++h) {
    int j = seq.order[h];
    JobTimes times(inst, j);
    const auto& splits = modes[j].splits;
    for (int k = 0; k < m; ++k) {
      sol.ptimes(h, k) = times.workload(k, k > 0 ? splits[k - 1] : 0, k < m - 1 ? splits[k] : 0);
    }
  }
  sol.makespan = earliest_starts(sol.ptimes, sol.starts);
  return sol;
}

Time two_machine_closed_form(std::span<const std::pair<Time, Time>> workloads) {
  if (workloads.empty()) throw InvalidInput("two_machine_closed_form needs at least one job");
  Time c = workloads.front().first;
  for (size_t j = 1; j < workloads.size(); ++j) {
    c += std::max(workloads[j].first, workloads[j - 1].second);
  }
  return c + workloads.back().second;
}

Time serialized_bound(const Matrix<Time>& ptimes) {
  Time total = 0;
  for (int h = 0; h < ptimes.rows(); ++h) {
    for (Time p : ptimes.row(h)) total += p;
  }
  return total;
}

}  // namespace fixb
