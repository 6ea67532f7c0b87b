#include "fixb/milp/formulations.hpp"

#include <algorithm>
#include <cmath>

namespace fixb::milp {

namespace {

std::string idx(std::initializer_list<int> parts) {
  std::string out;
  for (int p : parts) out += "_" + std::to_string(p + 1);
  return out;
}

// Start-time system shared by both models. `work(h, k)` returns the terms
// of the workload of position h on machine k.
template <typename WorkTerms>
void add_start_rows(Model& model, const Matrix<int>& s, WorkTerms work) {
  const int n = s.rows(), m = s.cols();
  for (int h = 0; h < n; ++h) {
    for (int k = 0; k + 1 < m; ++k) {
      std::vector<Term> t{{s(h, k + 1), 1.0}, {s(h, k), -1.0}};
      for (Term w : work(h, k)) t.push_back({w.var, -w.coef});
      model.add_constraint("precmachine" + idx({h, k}), std::move(t), Sense::kGreaterEqual, 0);
    }
  }
  for (int h = 0; h + 1 < n; ++h) {
    for (int k = 0; k < m; ++k) {
      std::vector<Term> t{{s(h + 1, k), 1.0}, {s(h, k), -1.0}};
      for (Term w : work(h, k)) t.push_back({w.var, -w.coef});
      model.add_constraint("precjob" + idx({h, k}), std::move(t), Sense::kGreaterEqual, 0);
    }
  }
  for (int h = 1; h < n; ++h) {
    for (int k = 0; k + 1 < m; ++k) {
      model.add_constraint("blocking" + idx({h, k}), {{s(h, k), 1.0}, {s(h - 1, k + 1), -1.0}},
                           Sense::kGreaterEqual, 0);
    }
  }
}

Matrix<int> add_starts(Model& model, int n, int m, double upper) {
  Matrix<int> s(n, m);
  for (int h = 0; h < n; ++h) {
    for (int k = 0; k < m; ++k) {
      s(h, k) = model.add_variable("s" + idx({h, k}), VarKind::kContinuous, 0.0, upper);
    }
  }
  return s;
}

void check_values(const Model& model, const SolveOutcome& outcome) {
  if (!outcome.has_values()) {
    throw DecodeError("solve outcome (" + std::string(to_string(outcome.status)) +
                      ") carries no variable values");
  }
  if (static_cast<int>(outcome.values.size()) != model.variable_count()) {
    throw DecodeError("solve outcome has " + std::to_string(outcome.values.size()) +
                      " values for " + std::to_string(model.variable_count()) + " variables");
  }
}

void check_objective(const Solution& sol, const SolveOutcome& outcome) {
  if (static_cast<double>(sol.makespan) > outcome.objective + 1e-6) {
    throw DecodeError("decoded makespan " + std::to_string(sol.makespan) +
                      " exceeds the model objective " + std::to_string(outcome.objective));
  }
}

}  // namespace

ModeGuardExceeded::ModeGuardExceeded(std::int64_t modes, std::int64_t guard)
    : std::runtime_error("layout has " + std::to_string(modes) +
                         " assignment modes per job, above the guard of " + std::to_string(guard)),
      modes_(modes) {}

int Mip1::y(int job, int slot, int machine) const {
  const Slot& sl = layout_.slot(slot);
  if (!sl.eligible(machine)) return -1;
  return y_[(static_cast<size_t>(job) * layout_.slot_count() + slot) * 2 + (machine - sl.machine)];
}

Mip1 build_mip1(const Instance& inst) {
  require_valid(inst);
  const Layout& layout = inst.layout();
  const int n = inst.jobs(), m = inst.machines(), q = layout.slot_count();
  const double horizon = static_cast<double>(inst.total_duration());
  Mip1 mip;
  Model& model = mip.model;
  mip.layout_ = layout;

  mip.x = Matrix<int>(n, n);
  for (int j = 0; j < n; ++j) {
    for (int h = 0; h < n; ++h) mip.x(j, h) = model.add_binary("x" + idx({j, h}));
  }
  mip.y_.assign(static_cast<size_t>(n) * q * 2, -1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < q; ++i) {
      const Slot& sl = layout.slot(i);
      for (int k = sl.machine; k <= sl.last_machine(); ++k) {
        mip.y_[(static_cast<size_t>(j) * q + i) * 2 + (k - sl.machine)] =
            model.add_binary("y" + idx({i, j, k}));
      }
    }
  }
  mip.s = add_starts(model, n, m, horizon);
  mip.p = Matrix<int>(n, m);
  for (int h = 0; h < n; ++h) {
    for (int k = 0; k < m; ++k) {
      mip.p(h, k) = model.add_variable("P" + idx({h, k}), VarKind::kContinuous, 0.0, horizon);
    }
  }

  model.set_objective({{mip.s(n - 1, m - 1), 1.0}, {mip.p(n - 1, m - 1), 1.0}});

  for (int j = 0; j < n; ++j) {
    std::vector<Term> t;
    for (int h = 0; h < n; ++h) t.push_back({mip.x(j, h), 1.0});
    model.add_constraint("assignjob" + idx({j}), std::move(t), Sense::kEqual, 1);
  }
  for (int h = 0; h < n; ++h) {
    std::vector<Term> t;
    for (int j = 0; j < n; ++j) t.push_back({mip.x(j, h), 1.0});
    model.add_constraint("assignpos" + idx({h}), std::move(t), Sense::kEqual, 1);
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < q; ++i) {
      const Slot& sl = layout.slot(i);
      std::vector<Term> t;
      for (int k = sl.machine; k <= sl.last_machine(); ++k) t.push_back({mip.y(j, i, k), 1.0});
      model.add_constraint("assignop" + idx({i, j}), std::move(t), Sense::kEqual, 1);
    }
  }
  // Operation order: slot i+1 may not run on an earlier machine than slot i.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < q; ++i) {
      const Slot& cur = layout.slot(i);
      const Slot& nxt = layout.slot(i + 1);
      for (int k = nxt.machine; k <= nxt.last_machine(); ++k) {
        for (int kp = cur.machine; kp <= cur.last_machine(); ++kp) {
          if (k >= kp) continue;
          model.add_constraint("order" + idx({i, j, k, kp}),
                               {{mip.y(j, i + 1, k), 1.0}, {mip.y(j, i, kp), 1.0}},
                               Sense::kLessEqual, 1);
        }
      }
    }
  }
  add_start_rows(model, mip.s, [&](int h, int k) {
    return std::vector<Term>{{mip.p(h, k), 1.0}};
  });
  for (int h = 0; h < n; ++h) {
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < n; ++j) {
        std::vector<Term> t{{mip.p(h, k), 1.0}};
        double big_m = 0;
        for (int i = 0; i < q; ++i) {
          if (!layout.slot(i).eligible(k)) continue;
          double p = static_cast<double>(inst.duration(j, i, k));
          big_m += p;
          t.push_back({mip.y(j, i, k), -p});
        }
        t.push_back({mip.x(j, h), -big_m});
        model.add_constraint("work" + idx({h, k, j}), std::move(t), Sense::kGreaterEqual, -big_m);
      }
    }
  }
  return mip;
}

Mip2 build_mip2(const Instance& inst, std::int64_t mode_guard) {
  require_valid(inst);
  const std::int64_t mode_count = count_modes(inst.layout());
  if (mode_count > mode_guard) throw ModeGuardExceeded(mode_count, mode_guard);
  const ModeTable table(inst);
  const int n = inst.jobs(), m = inst.machines(), a = table.mode_count();
  Mip2 mip;
  Model& model = mip.model;
  mip.jobs = n;
  mip.modes = a;
  mip.mode_list = table.modes();
  mip.x_.resize(static_cast<size_t>(n) * n * a);
  for (int j = 0; j < n; ++j) {
    for (int h = 0; h < n; ++h) {
      for (int l = 0; l < a; ++l) {
        mip.x_[(static_cast<size_t>(j) * n + h) * a + l] = model.add_binary("x" + idx({j, h, l}));
      }
    }
  }
  mip.s = add_starts(model, n, m, static_cast<double>(inst.total_duration()));

  std::vector<Term> obj{{mip.s(n - 1, m - 1), 1.0}};
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < a; ++l) {
      obj.push_back({mip.x(j, n - 1, l), static_cast<double>(table.workloads(j, l)[m - 1])});
    }
  }
  model.set_objective(std::move(obj));

  for (int j = 0; j < n; ++j) {
    std::vector<Term> t;
    for (int h = 0; h < n; ++h) {
      for (int l = 0; l < a; ++l) t.push_back({mip.x(j, h, l), 1.0});
    }
    model.add_constraint("assignjob" + idx({j}), std::move(t), Sense::kEqual, 1);
  }
  for (int h = 0; h < n; ++h) {
    std::vector<Term> t;
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < a; ++l) t.push_back({mip.x(j, h, l), 1.0});
    }
    model.add_constraint("assignpos" + idx({h}), std::move(t), Sense::kEqual, 1);
  }
  add_start_rows(model, mip.s, [&](int h, int k) {
    std::vector<Term> t;
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < a; ++l) {
        t.push_back({mip.x(j, h, l), static_cast<double>(table.workloads(j, l)[k])});
      }
    }
    return t;
  });
  return mip;
}

void fix_sequence(Mip1& mip, const Sequence& seq) {
  const int n = mip.x.rows();
  if (!is_permutation_of_jobs(seq, n)) throw InvalidInput("sequence does not match the model");
  for (int h = 0; h < n; ++h) {
    for (int j = 0; j < n; ++j) mip.model.fix(mip.x(j, h), seq.order[h] == j ? 1.0 : 0.0);
  }
}

void fix_modes(Mip1& mip, const Instance& inst, const std::vector<AssignmentMode>& modes) {
  const Layout& layout = inst.layout();
  if (static_cast<int>(modes.size()) != inst.jobs()) throw InvalidInput("one mode per job expected");
  for (int j = 0; j < inst.jobs(); ++j) {
    if (!is_valid_mode(layout, modes[j])) throw InvalidInput("invalid mode for the model's layout");
    for (int i = 0; i < layout.slot_count(); ++i) {
      const Slot& sl = layout.slot(i);
      int chosen = assigned_machine(layout, modes[j], i);
      for (int k = sl.machine; k <= sl.last_machine(); ++k) {
        mip.model.fix(mip.y(j, i, k), k == chosen ? 1.0 : 0.0);
      }
    }
  }
}

void fix_solution(Mip2& mip, const Sequence& seq, const std::vector<AssignmentMode>& modes) {
  const int n = mip.jobs;
  if (!is_permutation_of_jobs(seq, n) || static_cast<int>(modes.size()) != n) {
    throw InvalidInput("solution does not match the model");
  }
  std::vector<int> mode_index(n);
  for (int j = 0; j < n; ++j) {
    auto it = std::lower_bound(mip.mode_list.begin(), mip.mode_list.end(), modes[j]);
    if (it == mip.mode_list.end() || *it != modes[j]) throw InvalidInput("unknown assignment mode");
    mode_index[j] = static_cast<int>(it - mip.mode_list.begin());
  }
  for (int h = 0; h < n; ++h) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < mip.modes; ++l) {
        bool on = seq.order[h] == j && mode_index[j] == l;
        mip.model.fix(mip.x(j, h, l), on ? 1.0 : 0.0);
      }
    }
  }
}

AssignmentMode splits_from_machines(const Layout& layout, const std::vector<int>& machine_of_slot) {
  AssignmentMode mode{std::vector<int>(layout.boundary_count(), 0)};
  for (int k = 0; k < layout.boundary_count(); ++k) {
    auto block = layout.block(k);
    int upstream = 0;
    bool seen_downstream = false;
    for (int slot : block) {
      if (machine_of_slot[slot] == k) {
        if (seen_downstream) {
          throw DecodeError("slot " + std::to_string(slot + 1) +
                            " returns to machine " + std::to_string(k + 1) +
                            " after a later machine was used");
        }
        ++upstream;
      } else {
        seen_downstream = true;
      }
    }
    mode.splits[k] = upstream;
  }
  return mode;
}

namespace {

// Index of the single entry >= 0.5 in `values`; DecodeError when there is
// none or more than one.
int pick_one(const std::vector<double>& values, const std::string& what) {
  int found = -1;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.5) continue;
    if (found >= 0) throw DecodeError("ambiguous assignment in " + what);
    found = static_cast<int>(i);
  }
  if (found < 0) throw DecodeError("no value reaches 0.5 in " + what);
  return found;
}

Sequence sequence_from_positions(const std::vector<int>& position_of_job) {
  const int n = static_cast<int>(position_of_job.size());
  Sequence seq{std::vector<int>(n, -1)};
  for (int j = 0; j < n; ++j) {
    if (seq.order[position_of_job[j]] >= 0) {
      throw DecodeError("position " + std::to_string(position_of_job[j] + 1) +
                        " receives more than one job");
    }
    seq.order[position_of_job[j]] = j;
  }
  return seq;
}

}  // namespace

Solution decode(const Instance& inst, const Mip1& mip, const SolveOutcome& outcome) {
  check_values(mip.model, outcome);
  const Layout& layout = inst.layout();
  const int n = inst.jobs();
  std::vector<int> position_of_job(n);
  std::vector<AssignmentMode> modes(n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(n);
    for (int h = 0; h < n; ++h) row[h] = outcome.value(mip.x(j, h));
    position_of_job[j] = pick_one(row, "position row of job " + std::to_string(j + 1));
    std::vector<int> machine_of_slot(layout.slot_count());
    for (int i = 0; i < layout.slot_count(); ++i) {
      const Slot& sl = layout.slot(i);
      std::vector<double> op;
      for (int k = sl.machine; k <= sl.last_machine(); ++k) op.push_back(outcome.value(mip.y(j, i, k)));
      machine_of_slot[i] = sl.machine +
                           pick_one(op, "machine row of slot " + std::to_string(i + 1) +
                                            " of job " + std::to_string(j + 1));
    }
    modes[j] = splits_from_machines(layout, machine_of_slot);
  }
  Solution sol = evaluate(inst, sequence_from_positions(position_of_job), modes);
  check_objective(sol, outcome);
  return sol;
}

Solution decode(const Instance& inst, const Mip2& mip, const SolveOutcome& outcome) {
  check_values(mip.model, outcome);
  const int n = inst.jobs();
  std::vector<int> position_of_job(n);
  std::vector<AssignmentMode> modes(n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(static_cast<size_t>(n) * mip.modes);
    for (int h = 0; h < n; ++h) {
      for (int l = 0; l < mip.modes; ++l) row[static_cast<size_t>(h) * mip.modes + l] = outcome.value(mip.x(j, h, l));
    }
    int pick = pick_one(row, "row of job " + std::to_string(j + 1));
    position_of_job[j] = pick / mip.modes;
    modes[j] = mip.mode_list[pick % mip.modes];
  }
  Solution sol = evaluate(inst, sequence_from_positions(position_of_job), modes);
  check_objective(sol, outcome);
  return sol;
}

}  // namespace fixb::milp
