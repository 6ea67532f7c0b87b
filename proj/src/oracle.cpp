#include "fixb/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace fixb {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t modes_power(const Instance& inst) {
  std::uint64_t total = 1;
  const auto modes = static_cast<std::uint64_t>(count_modes(inst.layout()));
  for (int j = 0; j < inst.jobs(); ++j) total = mul_sat(total, modes);
  return total;
}

// Depth-first enumeration of mode vectors for one sequence. Row h of the
// schedule only depends on rows < h, so prefixes are shared.
class FixedSequenceSearch {
 public:
  FixedSequenceSearch(const ModeTable& table, const std::vector<int>& order)
      : table_(table),
        order_(order),
        n_(static_cast<int>(order.size())),
        m_(table.machines()),
        starts_(n_, m_),
        ptimes_(n_, m_),
        choice_(n_, 0) {}

  // Runs the enumeration; improves `best_value`/`best_modes` (per job) on a
  // strictly smaller makespan, or an equal one with smaller per-job modes.
  void run(Time& best_value, std::vector<int>& best_modes, bool& improved,
           std::uint64_t& evaluations) {
    best_value_ = &best_value;
    best_modes_ = &best_modes;
    improved_ = &improved;
    evaluations_ = &evaluations;
    descend(0);
  }

 private:
  void descend(int h) {
    if (h == n_) {
      ++*evaluations_;
      Time value = starts_(n_ - 1, m_ - 1) + ptimes_(n_ - 1, m_ - 1);
      if (value > *best_value_) return;
      std::vector<int> per_job(n_);
      for (int p = 0; p < n_; ++p) per_job[order_[p]] = choice_[p];
      if (value < *best_value_ || per_job < *best_modes_) {
        *best_value_ = value;
        *best_modes_ = std::move(per_job);
        *improved_ = true;
      }
      return;
    }
    const int job = order_[h];
    for (int l = 0; l < table_.mode_count(); ++l) {
      auto w = table_.workloads(job, l);
      std::copy(w.begin(), w.end(), ptimes_.row(h).begin());
      if (h == 0) {
        next_row_starts({}, {}, ptimes_.row(0), starts_.row(0));
      } else {
        next_row_starts(starts_.row(h - 1), ptimes_.row(h - 1), ptimes_.row(h), starts_.row(h));
      }
      choice_[h] = l;
      descend(h + 1);
    }
  }

  const ModeTable& table_;
  const std::vector<int>& order_;
  int n_, m_;
  Matrix<Time> starts_, ptimes_;
  std::vector<int> choice_;
  Time* best_value_ = nullptr;
  std::vector<int>* best_modes_ = nullptr;
  bool* improved_ = nullptr;
  std::uint64_t* evaluations_ = nullptr;
};

Solution assemble(const Instance& inst, const ModeTable& table, const std::vector<int>& order,
                  const std::vector<int>& mode_index) {
  std::vector<AssignmentMode> modes;
  modes.reserve(mode_index.size());
  for (int l : mode_index) modes.push_back(table.mode(l));
  return evaluate(inst, Sequence{order}, modes);
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("enumeration needs " +
                         (required == kSaturated ? std::string("more than 2^64")
                                                 : std::to_string(required)) +
                         " evaluations, budget is " + std::to_string(budget)),
      required_(required) {}

std::uint64_t brute_force_size(const Instance& inst) {
  std::uint64_t total = modes_power(inst);
  for (int i = 2; i <= inst.jobs(); ++i) total = mul_sat(total, static_cast<std::uint64_t>(i));
  return total;
}

OracleResult brute_force(const Instance& inst, std::uint64_t budget) {
  require_valid(inst);
  const std::uint64_t required = brute_force_size(inst);
  if (required > budget) throw BudgetExceeded(required, budget);
  ModeTable table(inst);
  std::vector<int> order(inst.jobs());
  std::iota(order.begin(), order.end(), 0);
  Time best = std::numeric_limits<Time>::max();
  std::vector<int> best_order, best_modes;
  std::uint64_t evaluations = 0;
  do {
    bool improved = false;
    // Sequences arrive in lexicographic order, so an equal makespan from a
    // later sequence must not replace the incumbent.
    Time bound = best == std::numeric_limits<Time>::max() ? best : best - 1;
    std::vector<int> modes_here(inst.jobs(), std::numeric_limits<int>::max());
    FixedSequenceSearch(table, order).run(bound, modes_here, improved, evaluations);
    if (improved) {
      best = bound;
      best_order = order;
      best_modes = std::move(modes_here);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {assemble(inst, table, best_order, best_modes), evaluations};
}

OracleResult brute_force_fixed_sequence(const Instance& inst, const Sequence& seq,
                                        std::uint64_t budget) {
  require_valid(inst);
  if (!is_permutation_of_jobs(seq, inst.jobs())) {
    throw InvalidInput("sequence is not a permutation of the instance's jobs");
  }
  const std::uint64_t required = modes_power(inst);
  if (required > budget) throw BudgetExceeded(required, budget);
  ModeTable table(inst);
  Time best = std::numeric_limits<Time>::max();
  std::vector<int> best_modes(inst.jobs(), std::numeric_limits<int>::max());
  bool improved = false;
  std::uint64_t evaluations = 0;
  FixedSequenceSearch(table, seq.order).run(best, best_modes, improved, evaluations);
  return {assemble(inst, table, seq.order, best_modes), evaluations};
}

}  // namespace fixb
