#pragma once

// The two positional models.
//
// MIP1 (explicit assignment): x[j][h] places job j at position h,
// y[i][j][k] runs slot i of job j on machine k, s[h][k] and P[h][k] are the
// start and workload of position h on machine k. Workloads are linked to the
// assignment through big-M rows with B_jk = sum of p_ij^k over slots eligible
// for machine k.
//
// MIP2 (implicit assignment): x[j][h][l] places job j at position h in mode
// l, with the per-mode workloads p_j^k(l) precomputed.
//
// Variable names are 1-based: x_j_h, y_i_j_k, s_h_k, P_h_k, x_j_h_l.

#include <cstdint>
#include <stdexcept>

#include "fixb/core.hpp"
#include "fixb/milp/backend.hpp"
#include "fixb/milp/model.hpp"

namespace fixb::milp {

struct Mip1 {
  Model model{"mip1"};
  Matrix<int> x;  // [job][position]
  Matrix<int> s;  // [position][machine]
  Matrix<int> p;  // [position][machine]

  // y variable of (job, slot, machine), or -1 when the machine is not eligible.
  int y(int job, int slot, int machine) const;

  Layout layout_;
  std::vector<int> y_;  // [job][slot][side], side 0 = lowest eligible machine
};

struct Mip2 {
  Model model{"mip2"};
  int jobs = 0;
  int modes = 0;
  std::vector<AssignmentMode> mode_list;
  Matrix<int> s;  // [position][machine]

  int x(int job, int position, int mode) const {
    return x_[(static_cast<size_t>(job) * jobs + position) * modes + mode];
  }

  std::vector<int> x_;
};

class ModeGuardExceeded : public std::runtime_error {
 public:
  ModeGuardExceeded(std::int64_t modes, std::int64_t guard);
  std::int64_t modes() const { return modes_; }

 private:
  std::int64_t modes_;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultModeGuard = 5000;

Mip1 build_mip1(const Instance& inst);
Mip2 build_mip2(const Instance& inst, std::int64_t mode_guard = kDefaultModeGuard);

// Fixings that pin the discrete decisions of MIP1.
void fix_sequence(Mip1& mip, const Sequence& seq);
void fix_modes(Mip1& mip, const Instance& inst, const std::vector<AssignmentMode>& modes);
// Fixes every x[j][h][l] of MIP2 to the given (sequence, modes) choice.
void fix_solution(Mip2& mip, const Sequence& seq, const std::vector<AssignmentMode>& modes);

// Rounds at 0.5 and re-derives the schedule with evaluate(). Throws
// DecodeError on missing values, ambiguous or incomplete rows, non-monotone
// assignments, or a decoded makespan above the reported objective.
Solution decode(const Instance& inst, const Mip1& mip, const SolveOutcome& outcome);
Solution decode(const Instance& inst, const Mip2& mip, const SolveOutcome& outcome);

// Splits implied by a 0/1 choice of machine per slot for one job; throws
// DecodeError when the choice is not monotone within a block.
AssignmentMode splits_from_machines(const Layout& layout, const std::vector<int>& machine_of_slot);

}  // namespace fixb::milp
