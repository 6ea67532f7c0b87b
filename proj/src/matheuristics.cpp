#include "fixb/matheuristics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "fixb/rng.hpp"

namespace fixb {

namespace {

using milp::Status;

constexpr std::array<std::string_view, 7> kNames{"ra-os", "la-os", "ia-os", "ma-os",
                                                 "rs-oa", "ms-oa", "sft"};

// Stream keys under the run seed.
constexpr std::uint64_t kRandomAssignmentStream = 1;
constexpr std::uint64_t kRandomSequenceStream = 2;

constexpr double kIntegralTol = 1e-6;

bool has_incumbent(const milp::SolveOutcome& out) {
  return out.has_values() && (out.status == Status::kOptimal || out.status == Status::kFeasible ||
                              out.status == Status::kTimeLimit);
}

milp::SolveOutcome run_phase(const milp::Model& model, milp::Backend& backend, double time_limit,
                             bool relax, const std::string& name, MatheuristicTrace& trace) {
  milp::SolveOutcome out = relax ? milp::solve_lp_relaxation(model, &backend, time_limit)
                                 : milp::solve(model, &backend, time_limit);
  trace.phases.push_back({name, out.status, out.seconds, out.objective});
  if (relax) ++trace.lp_solves;
  if (relax ? out.status != Status::kOptimal || !out.has_values() : !has_incumbent(out)) {
    std::string what = name + " phase ended with status " + std::string(milp::to_string(out.status));
    if (!out.message.empty()) what += " (" + out.message + ")";
    throw MatheuristicError(what, trace);
  }
  return out;
}

MatheuristicResult finish(const Instance& inst, const milp::Mip1& mip, const milp::SolveOutcome& out,
                          MatheuristicTrace trace) {
  MatheuristicResult result;
  result.solution = milp::decode(inst, mip, out);
  result.status = out.status;
  result.trace = std::move(trace);
  return result;
}

MatheuristicResult sequence_with_modes(const Instance& inst, const MatheuristicParams& params,
                                       milp::Backend& backend, std::vector<AssignmentMode> modes,
                                       MatheuristicTrace trace) {
  milp::Mip1 mip = milp::build_mip1(inst);
  milp::fix_modes(mip, inst, modes);
  trace.phase1_modes = std::move(modes);
  auto out = run_phase(mip.model, backend, params.time_limit, false, "sequencing", trace);
  return finish(inst, mip, out, std::move(trace));
}

std::vector<AssignmentMode> iterative_modes(const Instance& inst, const MatheuristicParams& params,
                                            milp::Backend& backend, MatheuristicTrace& trace) {
  const Layout& layout = inst.layout();
  milp::Mip1 mip = milp::build_mip1(inst);
  // Block position of each shiftable slot: (boundary, index inside block).
  std::vector<std::pair<int, int>> where(layout.slot_count(), {-1, -1});
  for (int b = 0; b < layout.boundary_count(); ++b) {
    auto block = layout.block(b);
    for (int t = 0; t < static_cast<int>(block.size()); ++t) where[block[t]] = {b, t};
  }
  int open = 0;
  for (int b = 0; b < layout.boundary_count(); ++b) open += inst.jobs() * layout.shiftable_count(b);
  auto pin = [&](int job, int slot, int machine) {
    const Slot& sl = layout.slot(slot);
    if (!mip.model.is_fixed(mip.y(job, slot, machine))) --open;
    for (int k = sl.machine; k <= sl.last_machine(); ++k) {
      int var = mip.y(job, slot, k);
      if (!mip.model.is_fixed(var)) ++trace.fixed_variables;
      mip.model.fix(var, k == machine ? 1.0 : 0.0);
    }
  };

  while (open > 0) {
    auto lp = run_phase(mip.model, backend, params.time_limit, true, "lp", trace);
    int best_job = -1, best_slot = -1, best_machine = -1;
    double best = -1.0;
    for (int j = 0; j < inst.jobs(); ++j) {
      for (int i = 0; i < layout.slot_count(); ++i) {
        const Slot& sl = layout.slot(i);
        if (!sl.shiftable) continue;
        for (int k = sl.machine; k <= sl.last_machine(); ++k) {
          int var = mip.y(j, i, k);
          if (mip.model.is_fixed(var)) continue;
          if (lp.value(var) > best) {
            best = lp.value(var);
            best_job = j, best_slot = i, best_machine = k;
          }
        }
      }
    }
    if (best_job < 0) break;
    ++trace.fixing_rounds;
    auto [b, t] = where[best_slot];
    auto block = layout.block(b);
    if (best_machine == b) {
      for (int u = 0; u <= t; ++u) pin(best_job, block[u], b);
    } else {
      for (int u = t; u < static_cast<int>(block.size()); ++u) pin(best_job, block[u], b + 1);
    }
  }

  std::vector<AssignmentMode> modes(inst.jobs());
  for (int j = 0; j < inst.jobs(); ++j) {
    std::vector<int> machine_of_slot(layout.slot_count());
    for (int i = 0; i < layout.slot_count(); ++i) {
      const Slot& sl = layout.slot(i);
      machine_of_slot[i] = sl.machine;
      if (sl.shiftable && mip.model.variable(mip.y(j, i, sl.machine + 1)).lower == 1.0) {
        machine_of_slot[i] = sl.machine + 1;
      }
    }
    modes[j] = milp::splits_from_machines(layout, machine_of_slot);
  }
  return modes;
}

}  // namespace

std::string_view to_string(Matheuristic algo) { return kNames[static_cast<size_t>(algo)]; }

std::optional<Matheuristic> parse_matheuristic(std::string_view name) {
  for (size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Matheuristic>(i);
  }
  return std::nullopt;
}

void MatheuristicParams::validate(int jobs) const {
  if (sft_r < 1 || sft_r > std::max(jobs, 1)) {
    throw InvalidInput("sft r must lie in [1, " + std::to_string(jobs) + "], got " +
                       std::to_string(sft_r));
  }
  if (!(sft_phi > 0.0 && sft_phi <= 1.0)) {
    throw InvalidInput("sft phi must lie in (0, 1], got " + std::to_string(sft_phi));
  }
  if (!(time_limit >= 0.0)) throw InvalidInput("time limit must be non-negative");
}

double MatheuristicTrace::seconds() const {
  double total = 0.0;
  for (const PhaseRecord& p : phases) total += p.seconds;
  return total;
}

std::vector<AssignmentMode> random_modes(const Instance& inst, std::uint64_t seed) {
  const Layout& layout = inst.layout();
  Rng rng(derive_stream_seed(seed, {kRandomAssignmentStream}));
  std::vector<AssignmentMode> modes(inst.jobs());
  for (auto& mode : modes) {
    mode.splits.resize(layout.boundary_count());
    for (int b = 0; b < layout.boundary_count(); ++b) {
      mode.splits[b] = static_cast<int>(rng.uniform_int(0, layout.shiftable_count(b)));
    }
  }
  return modes;
}

std::vector<AssignmentMode> min_time_modes(const Instance& inst) {
  const Layout& layout = inst.layout();
  std::vector<AssignmentMode> modes(inst.jobs());
  for (int j = 0; j < inst.jobs(); ++j) {
    JobTimes times(inst, j);
    modes[j].splits.resize(layout.boundary_count());
    // Blocks contribute independently to the total, so the lexicographically
    // first minimizer takes the smallest minimizing split per block.
    for (int b = 0; b < layout.boundary_count(); ++b) {
      int best = 0;
      for (int l = 1; l <= layout.shiftable_count(b); ++l) {
        if (times.upstream(b, l) + times.downstream(b, l) <
            times.upstream(b, best) + times.downstream(b, best)) {
          best = l;
        }
      }
      modes[j].splits[b] = best;
    }
  }
  return modes;
}

std::vector<AssignmentMode> round_lp_modes(const Instance& inst, const milp::Mip1& mip,
                                           const std::vector<double>& values) {
  const Layout& layout = inst.layout();
  std::vector<AssignmentMode> modes(inst.jobs());
  for (int j = 0; j < inst.jobs(); ++j) {
    modes[j].splits.resize(layout.boundary_count());
    for (int b = 0; b < layout.boundary_count(); ++b) {
      auto block = layout.block(b);
      const int size = static_cast<int>(block.size());
      // agreement(l) = sum_{t<l} y[t][b] + sum_{t>=l} y[t][b+1]
      double score = 0.0;
      for (int t = 0; t < size; ++t) score += values[mip.y(j, block[t], b + 1)];
      double best_score = score;
      int best = 0;
      for (int l = 1; l <= size; ++l) {
        score += values[mip.y(j, block[l - 1], b)] - values[mip.y(j, block[l - 1], b + 1)];
        if (score >= best_score - 1e-9) {
          best_score = std::max(best_score, score);
          best = l;
        }
      }
      modes[j].splits[b] = best;
    }
  }
  return modes;
}

MatheuristicResult assignment_first(const Instance& inst, const MatheuristicParams& params,
                                    milp::Backend& backend) {
  require_valid(inst);
  params.validate(inst.jobs());
  MatheuristicTrace trace;
  trace.seed = params.seed;
  std::vector<AssignmentMode> modes;
  switch (params.algorithm) {
    case Matheuristic::kRaOs:
      modes = random_modes(inst, params.seed);
      break;
    case Matheuristic::kMaOs:
      modes = min_time_modes(inst);
      break;
    case Matheuristic::kLaOs: {
      milp::Mip1 relaxed = milp::build_mip1(inst);
      auto lp = run_phase(relaxed.model, backend, params.time_limit, true, "lp", trace);
      modes = round_lp_modes(inst, relaxed, lp.values);
      break;
    }
    case Matheuristic::kIaOs:
      modes = iterative_modes(inst, params, backend, trace);
      break;
    default:
      throw InvalidInput(std::string(to_string(params.algorithm)) + " is not assignment-first");
  }
  return sequence_with_modes(inst, params, backend, std::move(modes), std::move(trace));
}

MatheuristicResult sequence_first(const Instance& inst, const MatheuristicParams& params,
                                  milp::Backend& backend) {
  require_valid(inst);
  params.validate(inst.jobs());
  MatheuristicTrace trace;
  trace.seed = params.seed;
  Sequence seq;
  if (params.algorithm == Matheuristic::kRsOa) {
    seq.order = Rng(derive_stream_seed(params.seed, {kRandomSequenceStream})).permutation(inst.jobs());
  } else if (params.algorithm == Matheuristic::kMsOa) {
    MatheuristicParams ma = params;
    ma.algorithm = Matheuristic::kMaOs;
    MatheuristicResult first;
    try {
      first = assignment_first(inst, ma, backend);
    } catch (const MatheuristicError& e) {
      throw MatheuristicError(std::string("ma-os: ") + e.what(), e.trace());
    }
    trace.phases = first.trace.phases;
    seq = first.solution.sequence;
  } else {
    throw InvalidInput(std::string(to_string(params.algorithm)) + " is not sequence-first");
  }
  milp::Mip1 mip = milp::build_mip1(inst);
  milp::fix_sequence(mip, seq);
  trace.phase1_sequence = seq;
  auto out = run_phase(mip.model, backend, params.time_limit, false, "assignment", trace);
  return finish(inst, mip, out, std::move(trace));
}

MatheuristicResult sft(const Instance& inst, const MatheuristicParams& params,
                       milp::Backend& backend) {
  require_valid(inst);
  params.validate(inst.jobs());
  MatheuristicTrace trace;
  trace.seed = params.seed;
  milp::Mip2 mip = milp::build_mip2(inst, params.mode_guard);
  milp::Model& model = mip.model;
  const int n = mip.jobs, a = mip.modes;

  struct Candidate {
    double value;
    int j, h, l;
  };
  auto fix_one = [&](int j, int h, int l) {
    model.fix(mip.x(j, h, l), 1.0);
    ++trace.fixed_variables;
    for (int jj = 0; jj < n; ++jj) {
      for (int hh = 0; hh < n; ++hh) {
        if (jj != j && hh != h) continue;
        for (int ll = 0; ll < a; ++ll) {
          int var = mip.x(jj, hh, ll);
          if (var == mip.x(j, h, l) || model.is_fixed(var)) continue;
          model.fix(var, 0.0);
          ++trace.fixed_variables;
        }
      }
    }
  };

  while (true) {
    auto lp = run_phase(model, backend, params.time_limit, true, "lp", trace);
    std::vector<Candidate> free;
    bool integral = true;
    for (int j = 0; j < n; ++j) {
      for (int h = 0; h < n; ++h) {
        for (int l = 0; l < a; ++l) {
          double v = lp.value(mip.x(j, h, l));
          if (std::abs(v - std::round(v)) > kIntegralTol) integral = false;
          if (!model.is_fixed(mip.x(j, h, l))) free.push_back({v, j, h, l});
        }
      }
    }
    // An integral relaxation already solves the restricted MIP.
    if (integral || free.empty()) break;
    std::stable_sort(free.begin(), free.end(),
                     [](const Candidate& x, const Candidate& y) { return x.value > y.value; });
    int fixed = 0;
    const int top = std::min<int>(params.sft_r, static_cast<int>(free.size()));
    for (int t = 0; t < top; ++t) {
      const Candidate& c = free[t];
      if (c.value < params.sft_phi - kIntegralTol) break;
      if (model.is_fixed(mip.x(c.j, c.h, c.l))) continue;
      fix_one(c.j, c.h, c.l);
      ++fixed;
    }
    if (fixed == 0) break;
    ++trace.fixing_rounds;
  }

  auto out = run_phase(model, backend, params.time_limit, false, "final-mip", trace);
  MatheuristicResult result;
  result.solution = milp::decode(inst, mip, out);
  result.status = out.status;
  result.trace = std::move(trace);
  return result;
}

MatheuristicResult run_matheuristic(const Instance& inst, const MatheuristicParams& params,
                                    milp::Backend& backend) {
  switch (params.algorithm) {
    case Matheuristic::kRaOs:
    case Matheuristic::kLaOs:
    case Matheuristic::kIaOs:
    case Matheuristic::kMaOs:
      return assignment_first(inst, params, backend);
    case Matheuristic::kRsOa:
    case Matheuristic::kMsOa:
      return sequence_first(inst, params, backend);
    case Matheuristic::kSft:
      return sft(inst, params, backend);
  }
  throw InvalidInput("unknown matheuristic");
}

}  // namespace fixb
