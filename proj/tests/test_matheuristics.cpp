#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fixb/exact.hpp"
#include "fixb/instgen.hpp"
#include "fixb/matheuristics.hpp"
#include "fixb/oracle.hpp"
#include "test_support.hpp"

namespace fixb {
namespace {

std::unique_ptr<milp::Backend> backend_or_null() {
  auto names = milp::available_backends();
  return names.empty() ? nullptr : milp::make_backend(names.front());
}

#define REQUIRE_BACKEND(var)                                  \
  auto var = backend_or_null();                               \
  if (!var) GTEST_SKIP() << "no MILP backend in this build"

constexpr Matheuristic kAll[] = {Matheuristic::kRaOs, Matheuristic::kLaOs, Matheuristic::kIaOs,
                                 Matheuristic::kMaOs, Matheuristic::kRsOa, Matheuristic::kMsOa,
                                 Matheuristic::kSft};

MatheuristicParams params_for(Matheuristic algo, std::uint64_t seed = 1) {
  MatheuristicParams p;
  p.algorithm = algo;
  p.seed = seed;
  p.time_limit = 120;
  return p;
}

Time workload_sum(const Instance& inst, int job, const AssignmentMode& mode) {
  auto w = testing::workloads_by_summation(inst, job, mode);
  return std::accumulate(w.begin(), w.end(), Time{0});
}

TEST(Params, Validation) {
  MatheuristicParams p;
  EXPECT_NO_THROW(p.validate(3));
  p.sft_r = 0;
  EXPECT_THROW(p.validate(3), InvalidInput);
  p.sft_r = 4;
  EXPECT_THROW(p.validate(3), InvalidInput);
  p.sft_r = 3;
  p.sft_phi = 0;
  EXPECT_THROW(p.validate(3), InvalidInput);
  p.sft_phi = 1.0;
  EXPECT_NO_THROW(p.validate(3));
}

TEST(Names, RoundTrip) {
  for (Matheuristic m : kAll) EXPECT_EQ(parse_matheuristic(to_string(m)), m);
  EXPECT_FALSE(parse_matheuristic("nope").has_value());
}

TEST(PhaseOne, MinTimeModesMatchExhaustiveMinimum) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = testing::random_toy(rng, 3, 5, 200);
    auto got = min_time_modes(inst);
    auto all = enumerate_modes(inst.layout());
    for (int j = 0; j < inst.jobs(); ++j) {
      size_t best = 0;
      for (size_t l = 1; l < all.size(); ++l) {
        if (workload_sum(inst, j, all[l]) < workload_sum(inst, j, all[best])) best = l;
      }
      EXPECT_EQ(got[j], all[best]);
    }
  }
}

TEST(PhaseOne, MinTimeModesKeepCheaperUpstreamWork) {
  Layout layout = testing::make_layout({3, {2, 3}});
  Instance inst("up", layout, 1);
  for (int i = 0; i < layout.slot_count(); ++i) {
    const Slot& s = layout.slot(i);
    inst.set_duration(0, i, s.machine, 3);
    if (s.shiftable) inst.set_duration(0, i, s.machine + 1, 5);
  }
  EXPECT_EQ(min_time_modes(inst)[0].splits, (std::vector<int>{2, 3}));
}

TEST(PhaseOne, RandomModesAreSeededAndValid) {
  Instance inst = generate_instance(1, 6, 2, 0);
  auto a = random_modes(inst, 5);
  EXPECT_EQ(a, random_modes(inst, 5));
  EXPECT_NE(a, random_modes(inst, 6));
  for (const auto& m : a) EXPECT_TRUE(is_valid_mode(inst.layout(), m));
}

TEST(PhaseOne, LpRoundingMaximizesAgreementWithTiesToLargerSplit) {
  Layout layout = testing::make_layout({2, {3}});
  std::mt19937_64 rng(62);
  Instance inst = testing::make_instance(layout, 1, rng);
  milp::Mip1 mip = milp::build_mip1(inst);
  auto block = layout.block(0);
  auto check = [&](std::vector<double> upstream) {
    std::vector<double> values(mip.model.variable_count(), 0.0);
    for (int t = 0; t < 3; ++t) {
      values[mip.y(0, block[t], 0)] = upstream[t];
      values[mip.y(0, block[t], 1)] = 1.0 - upstream[t];
    }
    int expected = 0;
    double best = -1;
    for (int l = 0; l <= 3; ++l) {
      double agree = 0;
      for (int t = 0; t < 3; ++t) agree += t < l ? upstream[t] : 1.0 - upstream[t];
      if (agree >= best - 1e-9) {
        best = std::max(best, agree);
        expected = l;
      }
    }
    EXPECT_EQ(round_lp_modes(inst, mip, values)[0].splits[0], expected);
    return expected;
  };
  EXPECT_EQ(check({1, 1, 0}), 2);
  EXPECT_EQ(check({0.2, 0.9, 0.1}), 2);
  EXPECT_EQ(check({0.5, 0.5, 0.5}), 3);
  EXPECT_EQ(check({0.9, 0.1, 0.9}), 3);
  check({0.6, 0.3, 0.7});
}

TEST(Matheuristics, SingleJobInstances) {
  REQUIRE_BACKEND(backend);
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 3; ++trial) {
    Instance inst = testing::make_instance(testing::make_layout({3, {2, 1}}), 1, rng);
    Time best = brute_force(inst).solution.makespan;
    for (Matheuristic algo : kAll) {
      MatheuristicResult r = run_matheuristic(inst, params_for(algo), *backend);
      EXPECT_EQ(r.solution.makespan, workload_sum(inst, 0, r.solution.modes[0]));
      if (algo == Matheuristic::kMaOs || algo == Matheuristic::kRsOa ||
          algo == Matheuristic::kMsOa || algo == Matheuristic::kSft) {
        EXPECT_EQ(r.solution.makespan, best) << to_string(algo);
      }
      if (!r.trace.phase1_modes.empty()) EXPECT_EQ(r.solution.modes, r.trace.phase1_modes);
    }
  }
}

TEST(Matheuristics, SandwichedBetweenOracleAndSerializedBound) {
  REQUIRE_BACKEND(backend);
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 6; ++trial) {
    Instance inst = testing::random_toy(rng, 4, 3, 6);
    Time best = brute_force(inst).solution.makespan;
    for (Matheuristic algo : kAll) {
      MatheuristicResult r = run_matheuristic(inst, params_for(algo, trial), *backend);
      Solution again = evaluate(inst, r.solution.sequence, r.solution.modes);
      EXPECT_EQ(again.makespan, r.solution.makespan);
      EXPECT_GE(r.solution.makespan, best) << to_string(algo);
      EXPECT_LE(r.solution.makespan, serialized_bound(r.solution.ptimes)) << to_string(algo);
    }
  }
}

TEST(Matheuristics, PhaseTwoDominatesHandBuiltCompletions) {
  REQUIRE_BACKEND(backend);
  std::mt19937_64 rng(65);
  Instance inst = testing::random_toy(rng, 4, 3, 6);
  const int n = inst.jobs();
  auto all = enumerate_modes(inst.layout());

  MatheuristicResult ma = run_matheuristic(inst, params_for(Matheuristic::kMaOs), *backend);
  ASSERT_EQ(ma.status, milp::Status::kOptimal);
  MatheuristicResult rs = run_matheuristic(inst, params_for(Matheuristic::kRsOa, 3), *backend);
  ASSERT_EQ(rs.status, milp::Status::kOptimal);
  ASSERT_TRUE(rs.trace.phase1_sequence.has_value());
  for (int sample = 0; sample < 100; ++sample) {
    Sequence seq{std::vector<int>(n)};
    std::iota(seq.order.begin(), seq.order.end(), 0);
    std::shuffle(seq.order.begin(), seq.order.end(), rng);
    EXPECT_LE(ma.solution.makespan, evaluate(inst, seq, ma.trace.phase1_modes).makespan);

    std::vector<AssignmentMode> modes;
    for (int j = 0; j < n; ++j) {
      modes.push_back(all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)]);
    }
    EXPECT_LE(rs.solution.makespan, evaluate(inst, *rs.trace.phase1_sequence, modes).makespan);
  }
  EXPECT_LE(rs.solution.makespan,
            evaluate(inst, *rs.trace.phase1_sequence, min_time_modes(inst)).makespan);
}

TEST(Matheuristics, SequenceFirstOnTwoMachinesMatchesDp) {
  REQUIRE_BACKEND(backend);
  std::mt19937_64 rng(66);
  for (int trial = 0; trial < 4; ++trial) {
    testing::ToyShape shape{2, {2}};
    Instance inst = testing::make_instance(testing::make_layout(shape), 4, rng);
    MatheuristicResult rs = run_matheuristic(inst, params_for(Matheuristic::kRsOa, trial), *backend);
    ASSERT_EQ(rs.status, milp::Status::kOptimal);
    Solution dp = solve_two_machine_fixed_sequence(inst, *rs.trace.phase1_sequence);
    EXPECT_EQ(rs.solution.makespan, dp.makespan);
    EXPECT_EQ(rs.solution.sequence, *rs.trace.phase1_sequence);
  }
}

TEST(Matheuristics, MinTimeSequenceReoptimizationNeverHurts) {
  REQUIRE_BACKEND(backend);
  for (int index = 0; index < 3; ++index) {
    Instance inst = generate_instance(1, 5, 17, index);
    MatheuristicResult ma = run_matheuristic(inst, params_for(Matheuristic::kMaOs), *backend);
    MatheuristicResult ms = run_matheuristic(inst, params_for(Matheuristic::kMsOa), *backend);
    if (ma.status != milp::Status::kOptimal || ms.status != milp::Status::kOptimal) continue;
    EXPECT_LE(ms.solution.makespan, ma.solution.makespan);
    EXPECT_EQ(*ms.trace.phase1_sequence, ma.solution.sequence);
  }
}

TEST(Sft, IntegralFirstRelaxationNeedsNoFixing) {
  REQUIRE_BACKEND(backend);
  std::mt19937_64 rng(67);
  Instance inst = testing::make_instance(testing::make_layout({3, {2, 2}}), 1, rng);
  MatheuristicResult r = sft(inst, params_for(Matheuristic::kSft), *backend);
  EXPECT_EQ(r.trace.fixing_rounds, 0);
  EXPECT_EQ(r.trace.lp_solves, 1);
  ASSERT_GE(r.trace.phases.size(), 2u);
  EXPECT_NEAR(r.trace.phases.front().objective, static_cast<double>(r.solution.makespan), 1e-6);
}

TEST(Sft, FixingRoundsAreBoundedByJobCount) {
  REQUIRE_BACKEND(backend);
  for (int index = 0; index < 3; ++index) {
    Instance inst = generate_instance(1, 4, 23, index);
    for (int r : {1, 4}) {
      for (double phi : {0.3, 0.51, 0.66}) {
        MatheuristicParams p = params_for(Matheuristic::kSft);
        p.sft_r = r;
        p.sft_phi = phi;
        MatheuristicResult res = sft(inst, p, *backend);
        EXPECT_LE(res.trace.fixing_rounds, inst.jobs());
        EXPECT_LE(res.trace.lp_solves, inst.jobs() + 1);
        EXPECT_EQ(evaluate(inst, res.solution.sequence, res.solution.modes).makespan,
                  res.solution.makespan);
      }
    }
  }
}

TEST(Matheuristics, RandomStrategiesAreReproducible) {
  REQUIRE_BACKEND(backend);
  Instance inst = generate_instance(2, 4, 9, 0);
  for (Matheuristic algo : {Matheuristic::kRaOs, Matheuristic::kRsOa}) {
    auto a = run_matheuristic(inst, params_for(algo, 4), *backend);
    auto b = run_matheuristic(inst, params_for(algo, 4), *backend);
    EXPECT_EQ(a.solution.makespan, b.solution.makespan);
    EXPECT_EQ(a.trace.phase1_modes, b.trace.phase1_modes);
    EXPECT_EQ(a.trace.phase1_sequence, b.trace.phase1_sequence);
  }
}

TEST(Matheuristics, IterativeAssignmentFixesEveryShiftableOperation) {
  REQUIRE_BACKEND(backend);
  Instance inst = generate_instance(1, 3, 29, 0);
  MatheuristicResult r = run_matheuristic(inst, params_for(Matheuristic::kIaOs), *backend);
  ASSERT_EQ(r.trace.phase1_modes.size(), 3u);
  for (const auto& m : r.trace.phase1_modes) EXPECT_TRUE(is_valid_mode(inst.layout(), m));
  // Every round fixes at least one of the 3 * 11 shiftable operations.
  EXPECT_GE(r.trace.fixing_rounds, 1);
  EXPECT_LE(r.trace.fixing_rounds, 3 * 11);
  EXPECT_EQ(r.trace.lp_solves, r.trace.fixing_rounds);
}

}  // namespace
}  // namespace fixb
