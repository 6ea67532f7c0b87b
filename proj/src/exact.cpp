#include "fixb/exact.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace fixb {

namespace {

struct Label {
  Time x = 0;  // first job's completion on machine k
  Time t = 0;  // second job's start on machine k
  int a = 0;   // first job's split at boundary k
  int b = 0;   // second job's split at boundary k-1
  int parent = -1;
};

// Pareto set of labels of one node, each entry an index into the pool.
class ParetoSet {
 public:
  // Returns false when `cand` is weakly dominated by a stored label.
  bool offer(std::vector<Label>& pool, const Label& cand) {
    for (int id : ids_) {
      if (pool[id].x <= cand.x && pool[id].t <= cand.t) return false;
    }
    std::erase_if(ids_, [&](int id) { return cand.x <= pool[id].x && cand.t <= pool[id].t; });
    ids_.push_back(static_cast<int>(pool.size()));
    pool.push_back(cand);
    return true;
  }
  const std::vector<int>& ids() const { return ids_; }

 private:
  std::vector<int> ids_;
};

struct OrderOutcome {
  Time makespan = std::numeric_limits<Time>::max();
  std::vector<AssignmentMode> modes;  // indexed by job
  std::int64_t labels = 0;
};

OrderOutcome solve_order(const Instance& inst, int first, int second) {
  const Layout& layout = inst.layout();
  const int m = inst.machines();
  const JobTimes ta(inst, first), tb(inst, second);
  auto a_range = [&](int k) { return k < m - 1 ? layout.shiftable_count(k) : 0; };
  auto b_range = [&](int k) { return k > 0 ? layout.shiftable_count(k - 1) : 0; };

  std::vector<Label> pool;
  // nodes[a][b] of the current layer
  auto make_layer = [&](int k) {
    return std::vector<std::vector<ParetoSet>>(a_range(k) + 1,
                                               std::vector<ParetoSet>(b_range(k) + 1));
  };
  auto layer = make_layer(0);
  for (int a = 0; a <= a_range(0); ++a) {
    Time x = ta.workload(0, 0, a);
    layer[a][0].offer(pool, {x, x, a, 0, -1});
  }
  for (int k = 0; k + 1 < m; ++k) {
    auto next = make_layer(k + 1);
    for (int a = 0; a <= a_range(k); ++a) {
      for (int b = 0; b <= b_range(k); ++b) {
        for (int id : layer[a][b].ids()) {
          for (int a2 = 0; a2 <= a_range(k + 1); ++a2) {
            for (int b2 = 0; b2 <= b_range(k + 1); ++b2) {
              const Label& from = pool[id];
              Time x = from.x + ta.workload(k + 1, a, a2);
              Time t = std::max(from.t + tb.workload(k, b, b2), x);
              next[a2][b2].offer(pool, {x, t, a2, b2, id});
            }
          }
        }
      }
    }
    layer = std::move(next);
  }

  OrderOutcome out;
  out.labels = static_cast<std::int64_t>(pool.size());
  for (int b = 0; b <= b_range(m - 1); ++b) {
    for (int id : layer[0][b].ids()) {
      Time c = pool[id].t + tb.workload(m - 1, b, 0);
      std::vector<AssignmentMode> modes(inst.jobs(),
                                        AssignmentMode{std::vector<int>(m - 1, 0)});
      for (int cur = id, k = m - 1; cur >= 0; cur = pool[cur].parent, --k) {
        if (k < m - 1) modes[first].splits[k] = pool[cur].a;
        if (k > 0) modes[second].splits[k - 1] = pool[cur].b;
      }
      if (c < out.makespan || (c == out.makespan && modes < out.modes)) {
        out.makespan = c;
        out.modes = std::move(modes);
      }
    }
  }
  return out;
}

}  // namespace

TwoJobGraphStats two_job_graph_size(const Layout& layout) {
  const int m = layout.machines();
  auto layer_size = [&](int k) -> std::int64_t {
    std::int64_t a = k < m - 1 ? layout.shiftable_count(k) + 1 : 1;
    std::int64_t b = k > 0 ? layout.shiftable_count(k - 1) + 1 : 1;
    return a * b;
  };
  TwoJobGraphStats s;
  s.nodes = 2;
  for (int k = 0; k < m; ++k) s.nodes += layer_size(k);
  s.arcs = layer_size(0) + layer_size(m - 1);
  for (int k = 0; k + 1 < m; ++k) s.arcs += layer_size(k) * layer_size(k + 1);
  return s;
}

TwoJobResult solve_two_jobs(const Instance& inst) {
  require_valid(inst);
  if (inst.jobs() != 2) {
    throw InvalidInput("two-job solver needs exactly 2 jobs, instance has " +
                       std::to_string(inst.jobs()));
  }
  OrderOutcome ab = solve_order(inst, 0, 1);
  OrderOutcome ba = solve_order(inst, 1, 0);
  const bool pick_ab = ab.makespan <= ba.makespan;
  const OrderOutcome& best = pick_ab ? ab : ba;
  Sequence seq{pick_ab ? std::vector<int>{0, 1} : std::vector<int>{1, 0}};

  TwoJobResult result;
  result.solution = evaluate(inst, seq, best.modes);
  if (result.solution.makespan != best.makespan) {
    throw std::logic_error("two-job path value " + std::to_string(best.makespan) +
                           " differs from the evaluated makespan " +
                           std::to_string(result.solution.makespan));
  }
  TwoJobGraphStats size = two_job_graph_size(inst.layout());
  result.stats.nodes = size.nodes;
  result.stats.arcs = size.arcs;
  result.stats.labels = ab.labels + ba.labels;
  return result;
}

Solution solve_two_machine_fixed_sequence(const Instance& inst, const Sequence& seq) {
  require_valid(inst);
  if (inst.machines() != 2) {
    throw InvalidInput("two-machine solver needs m = 2, instance has m = " +
                       std::to_string(inst.machines()));
  }
  if (!is_permutation_of_jobs(seq, inst.jobs())) {
    throw InvalidInput("sequence is not a permutation of the instance's jobs");
  }
  const ModeTable table(inst);
  const int n = inst.jobs(), modes = table.mode_count();
  auto p1 = [&](int h, int l) { return table.workloads(seq.order[h], l)[0]; };
  auto p2 = [&](int h, int l) { return table.workloads(seq.order[h], l)[1]; };

  Matrix<Time> best(n, modes);
  Matrix<int> parent(n, modes, -1);
  for (int l = 0; l < modes; ++l) best(0, l) = p1(0, l);
  for (int h = 1; h < n; ++h) {
    for (int l = 0; l < modes; ++l) {
      Time b = std::numeric_limits<Time>::max();
      for (int lp = 0; lp < modes; ++lp) {
        Time v = best(h - 1, lp) + std::max(p1(h, l), p2(h - 1, lp));
        if (v < b) {
          b = v;
          parent(h, l) = lp;
        }
      }
      best(h, l) = b;
    }
  }
  int last = 0;
  Time value = std::numeric_limits<Time>::max();
  for (int l = 0; l < modes; ++l) {
    Time v = best(n - 1, l) + p2(n - 1, l);
    if (v < value) {
      value = v;
      last = l;
    }
  }
  std::vector<AssignmentMode> chosen(n);
  for (int h = n - 1, l = last; h >= 0; l = parent(h, l), --h) {
    chosen[seq.order[h]] = table.mode(l);
  }
  Solution sol = evaluate(inst, seq, chosen);
  if (sol.makespan != value) {
    throw std::logic_error("two-machine DP value " + std::to_string(value) +
                           " differs from the evaluated makespan " + std::to_string(sol.makespan));
  }
  return sol;
}

}  // namespace fixb
