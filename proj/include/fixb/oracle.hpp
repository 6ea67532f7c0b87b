#pragma once

// Exhaustive reference solver. Deliberately naive: every (sequence, mode
// vector) pair is evaluated with the earliest-start recurrence.

#include <cstdint>
#include <stdexcept>

#include "fixb/core.hpp"

namespace fixb {

// Raised instead of returning a partial answer when the enumeration would
// exceed the evaluation budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

struct OracleResult {
  Solution solution;
  // Number of complete (sequence, mode vector) evaluations performed.
  std::uint64_t evaluations = 0;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 50'000'000;

// Global optimum. Ties go to the lexicographically smallest sequence, then
// the smallest concatenation of per-job split vectors.
OracleResult brute_force(const Instance& inst, std::uint64_t budget = kDefaultOracleBudget);

// Optimal mode vector for a fixed sequence, same tie rule.
OracleResult brute_force_fixed_sequence(const Instance& inst, const Sequence& seq,
                                        std::uint64_t budget = kDefaultOracleBudget);

// n! * |A|^n, saturating at UINT64_MAX.
std::uint64_t brute_force_size(const Instance& inst);

}  // namespace fixb
