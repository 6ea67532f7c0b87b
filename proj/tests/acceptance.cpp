// Acceptance gate: one PASS/FAIL/SKIP line per criterion, exit status 1 when
// any criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "fixb/exact.hpp"
#include "fixb/insertion.hpp"
#include "fixb/instgen.hpp"
#include "fixb/io.hpp"
#include "fixb/milp/backend.hpp"
#include "fixb/milp/formulations.hpp"
#include "fixb/oracle.hpp"
#include "fixb/solvers.hpp"
#include "test_support.hpp"

namespace {

using namespace fixb;
namespace fs = std::filesystem;

constexpr double kScalingRatioMax = 10.0;    // criterion 8
constexpr double kTrendTolerance = 0.01;     // criterion 10, relative on means
constexpr double kTrendPhaseLimit = 60.0;    // criterion 10, seconds per MIP phase
constexpr double kExactnessLimit = 600.0;    // criterion 3, seconds per MIP solve

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

std::unique_ptr<milp::Backend> g_backend;

std::unique_ptr<milp::Backend> open_default_backend() {
  std::string name = milp::default_backend_name();
  return name.empty() ? nullptr : milp::make_backend(name);
}

std::vector<AssignmentMode> random_modes(const std::vector<AssignmentMode>& all, int n,
                                         std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  std::vector<AssignmentMode> modes;
  for (int j = 0; j < n; ++j) modes.push_back(all[pick(rng)]);
  return modes;
}

Sequence random_sequence(int n, std::mt19937_64& rng) {
  Sequence seq{std::vector<int>(n)};
  std::iota(seq.order.begin(), seq.order.end(), 0);
  std::shuffle(seq.order.begin(), seq.order.end(), rng);
  return seq;
}

// The 50 toys shared by criteria 2 and 3: n <= 4, m <= 3, |A| <= 4.
const std::vector<Instance>& exactness_toys() {
  static const std::vector<Instance> toys = [] {
    std::mt19937_64 rng(20240601);
    std::vector<Instance> out;
    for (int i = 0; i < 50; ++i) out.push_back(testing::random_toy(rng, 4, 3, 4));
    return out;
  }();
  return toys;
}

Outcome mode_counts() {
  const std::int64_t a1 = count_modes(layout_for(1));
  const std::int64_t a2 = count_modes(layout_for(2));
  const std::int64_t e1 = static_cast<std::int64_t>(enumerate_modes(layout_for(1)).size());
  const std::int64_t e2 = static_cast<std::int64_t>(enumerate_modes(layout_for(2)).size());
  std::ostringstream d;
  d << "|A| set1=" << a1 << " (enumerated " << e1 << "), set2=" << a2 << " (enumerated " << e2 << ")";
  bool ok = a1 == 40 && a2 == 100 && e1 == 40 && e2 == 100;
  return {ok ? Verdict::kPass : Verdict::kFail, d.str()};
}

Outcome evaluator_mip_feasibility() {
  if (!g_backend) return {Verdict::kSkip, "no MILP backend configured"};
  std::mt19937_64 rng(7101);
  int checked = 0;
  for (const Instance& inst : exactness_toys()) {
    Sequence seq = random_sequence(inst.jobs(), rng);
    auto modes = random_modes(enumerate_modes(inst.layout()), inst.jobs(), rng);
    Solution sol = evaluate(inst, seq, modes);

    milp::Mip1 m1 = milp::build_mip1(inst);
    milp::fix_sequence(m1, seq);
    milp::fix_modes(m1, inst, modes);
    milp::SolveOutcome o1 = milp::solve(m1.model, g_backend.get(), kExactnessLimit);
    milp::Mip2 m2 = milp::build_mip2(inst);
    milp::fix_solution(m2, seq, modes);
    milp::SolveOutcome o2 = milp::solve(m2.model, g_backend.get(), kExactnessLimit);
    const double want = static_cast<double>(sol.makespan);
    if (o1.status != milp::Status::kOptimal || o1.objective != want ||
        o2.status != milp::Status::kOptimal || o2.objective != want) {
      std::ostringstream d;
      d << "toy " << checked << ": evaluate=" << sol.makespan << " mip1=" << milp::to_string(o1.status)
        << "/" << o1.objective << " mip2=" << milp::to_string(o2.status) << "/" << o2.objective;
      return {Verdict::kFail, d.str()};
    }
    ++checked;
  }
  return {Verdict::kPass, std::to_string(checked) + " injected schedules, objective == makespan"};
}

Outcome exactness_triangle() {
  if (!g_backend) return {Verdict::kSkip, "no MILP backend configured"};
  int checked = 0;
  for (const Instance& inst : exactness_toys()) {
    const Time oracle = brute_force(inst).solution.makespan;
    milp::SolveOutcome o1 = milp::solve(milp::build_mip1(inst).model, g_backend.get(), kExactnessLimit);
    milp::SolveOutcome o2 = milp::solve(milp::build_mip2(inst).model, g_backend.get(), kExactnessLimit);
    const double want = static_cast<double>(oracle);
    if (o1.status != milp::Status::kOptimal || o1.objective != want ||
        o2.status != milp::Status::kOptimal || o2.objective != want) {
      std::ostringstream d;
      d << "toy " << checked << ": oracle=" << oracle << " mip1=" << milp::to_string(o1.status) << "/"
        << o1.objective << " mip2=" << milp::to_string(o2.status) << "/" << o2.objective;
      return {Verdict::kFail, d.str()};
    }
    ++checked;
  }
  return {Verdict::kPass, std::to_string(checked) + " toys, oracle == MIP1 == MIP2"};
}

Outcome two_machine_identity() {
  std::mt19937_64 rng(7104);
  int samples = 0;
  for (int trial = 0; trial < 200; ++trial) {
    testing::ToyShape shape{2, {std::uniform_int_distribution<int>(0, 3)(rng)}};
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    Instance inst = testing::make_instance(testing::make_layout(shape), n, rng);
    auto all = enumerate_modes(inst.layout());
    for (int s = 0; s < 100; ++s) {
      Sequence seq = random_sequence(n, rng);
      auto modes = random_modes(all, n, rng);
      std::vector<std::pair<Time, Time>> loads;
      for (int j : seq.order) {
        auto w = mode_workloads(inst, j, modes[j]);
        loads.emplace_back(w[0], w[1]);
      }
      const Time closed = two_machine_closed_form(loads);
      const Time eval = evaluate(inst, seq, modes).makespan;
      if (closed != eval) {
        return {Verdict::kFail, "instance " + std::to_string(trial) + ": closed form " +
                                    std::to_string(closed) + " vs evaluate " + std::to_string(eval)};
      }
      ++samples;
    }
  }
  return {Verdict::kPass, std::to_string(samples) + " samples over 200 instances agree"};
}

Outcome two_machine_dp() {
  std::mt19937_64 rng(7105);
  for (int trial = 0; trial < 100; ++trial) {
    testing::ToyShape shape{2, {std::uniform_int_distribution<int>(0, 3)(rng)}};
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    Instance inst = testing::make_instance(testing::make_layout(shape), n, rng);
    Sequence seq = random_sequence(n, rng);
    const Time dp = solve_two_machine_fixed_sequence(inst, seq).makespan;
    const Time oracle = brute_force_fixed_sequence(inst, seq).solution.makespan;
    if (dp != oracle) {
      return {Verdict::kFail, "instance " + std::to_string(trial) + ": dp " + std::to_string(dp) +
                                  " vs oracle " + std::to_string(oracle)};
    }
  }
  return {Verdict::kPass, "100 instances, dp == fixed-sequence oracle"};
}

Outcome two_job_solver() {
  std::vector<Instance> cases;
  std::mt19937_64 rng(7106);
  for (int i = 0; i < 80; ++i) {
    cases.push_back(
        testing::make_instance(testing::make_layout(testing::random_shape(rng, 6, 400)), 2, rng, 1, 12));
  }
  for (int i = 0; i < 10; ++i) cases.push_back(generate_instance(1, 2, 7106, i));
  for (int i = 0; i < 10; ++i) cases.push_back(generate_instance(2, 2, 7106, i));
  int idx = 0;
  for (const Instance& inst : cases) {
    const Time got = solve_two_jobs(inst).solution.makespan;
    const Time oracle = brute_force(inst).solution.makespan;
    if (got != oracle) {
      return {Verdict::kFail, "case " + std::to_string(idx) + ": two-job " + std::to_string(got) +
                                  " vs oracle " + std::to_string(oracle)};
    }
    ++idx;
  }
  return {Verdict::kPass, "100 instances (20 on experiment layouts), two-job == oracle"};
}

Outcome heuristic_sandwich() {
  const std::vector<std::string> algorithms{"insertion", "ra-os", "la-os", "ia-os",
                                            "ma-os",     "rs-oa", "ms-oa", "sft"};
  std::mt19937_64 rng(7107);
  int runs = 0, skipped = 0;
  for (int i = 0; i < 30; ++i) {
    Instance inst = testing::random_toy(rng, 5, 4, 6);
    const Time oracle = brute_force(inst).solution.makespan;
    for (const std::string& algo : algorithms) {
      if (requires_backend(algo) && !g_backend) {
        ++skipped;
        continue;
      }
      RunRequest req;
      req.algorithm = algo;
      req.seed = static_cast<std::uint64_t>(i);
      req.time_limit = kTrendPhaseLimit;
      RunResult r = run_algorithm(inst, req, g_backend.get());
      if (!r.solution) {
        return {Verdict::kFail, algo + " on toy " + std::to_string(i) + ": " + r.status + " " + r.message};
      }
      const Time v = r.solution->makespan;
      const Time upper = serialized_bound(r.solution->ptimes);
      if (v < oracle || v > upper || evaluate(inst, r.solution->sequence, r.solution->modes).makespan != v) {
        return {Verdict::kFail, algo + " on toy " + std::to_string(i) + ": " + std::to_string(oracle) +
                                    " <= " + std::to_string(v) + " <= " + std::to_string(upper) +
                                    " violated"};
      }
      ++runs;
    }
  }
  if (skipped > 0) {
    return {Verdict::kSkip, std::to_string(runs) + " runs ok, " + std::to_string(skipped) +
                                " MIP-based runs skipped: no MILP backend configured"};
  }
  return {Verdict::kPass, std::to_string(runs) + " runs (30 toys x 8 algorithms) within [oracle, serialized]"};
}

Outcome insertion_scaling() {
  const int sizes[] = {20, 40, 80};
  constexpr int kInstances = 5;
  constexpr int kRepeats = 3;
  double mean_ms[3];
  for (int s = 0; s < 3; ++s) {
    double total = 0;
    for (int i = 0; i < kInstances; ++i) {
      Instance inst = generate_instance(1, sizes[s], 7108, i);
      for (int rep = 0; rep < kRepeats; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        Solution sol = insertion_heuristic(inst, std::nullopt, 0);
        auto t1 = std::chrono::steady_clock::now();
        if (sol.sequence.size() != sizes[s]) return {Verdict::kFail, "incomplete schedule"};
        total += std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
    }
    mean_ms[s] = total / (kInstances * kRepeats);
  }
  const double r1 = mean_ms[1] / mean_ms[0], r2 = mean_ms[2] / mean_ms[1];
  std::ostringstream d;
  d.precision(3);
  d << std::fixed << "mean ms n=20/40/80: " << mean_ms[0] << "/" << mean_ms[1] << "/" << mean_ms[2]
    << ", ratios " << r1 << ", " << r2 << " (max " << kScalingRatioMax << ")";
  return {r1 <= kScalingRatioMax && r2 <= kScalingRatioMax ? Verdict::kPass : Verdict::kFail, d.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome generator() {
  const fs::path root = fs::temp_directory_path() / "fixb_acceptance_gen";
  fs::remove_all(root);
  const GenSpec spec{1, 10, 7109, 140};
  auto a = write_batch(spec, root / "a");
  auto b = write_batch(spec, root / "b");
  if (a.size() != 140 || b.size() != 140) return {Verdict::kFail, "batch size mismatch"};
  for (size_t i = 0; i < a.size(); ++i) {
    if (slurp(a[i]) != slurp(b[i])) return {Verdict::kFail, a[i].filename().string() + " differs"};
  }
  Time lo_s = 1 << 30, hi_s = 0, lo_1 = 1 << 30, hi_1 = 0;
  for (const fs::path& p : a) {
    Instance inst = load_instance(p);
    const Layout& layout = inst.layout();
    for (int j = 0; j < inst.jobs(); ++j) {
      for (int i = 0; i < layout.slot_count(); ++i) {
        const Slot& s = layout.slot(i);
        for (int k = s.machine; k <= s.last_machine(); ++k) {
          const Time p = inst.duration(j, i, k);
          if (s.shiftable) {
            lo_s = std::min(lo_s, p);
            hi_s = std::max(hi_s, p);
          } else {
            lo_1 = std::min(lo_1, p);
            hi_1 = std::max(hi_1, p);
          }
        }
      }
    }
  }
  fs::remove_all(root);
  std::ostringstream d;
  d << "140 files identical; shiftable in [" << lo_s << "," << hi_s << "], singles in [" << lo_1 << ","
    << hi_1 << "]";
  bool ok = lo_s >= 2 && hi_s <= 14 && lo_1 >= 10 && hi_1 <= 28;
  return {ok ? Verdict::kPass : Verdict::kFail, d.str()};
}

Outcome directional_trend() {
  if (!g_backend) return {Verdict::kSkip, "no MILP backend configured"};
  struct Arm {
    std::string algorithm;
    double phi;
    double sum = 0;
  };
  Arm arms[] = {{"sft", 0.66}, {"sft", 0.51}, {"ms-oa", 0.66}, {"ma-os", 0.66}};
  constexpr int kCount = 10;
  for (int i = 0; i < kCount; ++i) {
    Instance inst = generate_instance(1, 10, 7110, i);
    for (Arm& arm : arms) {
      RunRequest req;
      req.algorithm = arm.algorithm;
      req.sft_r = 1;
      req.sft_phi = arm.phi;
      req.time_limit = kTrendPhaseLimit;
      RunResult r = run_algorithm(inst, req, g_backend.get());
      if (!r.solution) {
        return {Verdict::kFail, arm.algorithm + " on instance " + std::to_string(i) + ": " + r.status +
                                    " " + r.message};
      }
      arm.sum += static_cast<double>(r.solution->makespan);
    }
  }
  const double sft66 = arms[0].sum / kCount, sft51 = arms[1].sum / kCount;
  const double msoa = arms[2].sum / kCount, maos = arms[3].sum / kCount;
  const bool ok_sft = sft66 <= sft51 * (1 + kTrendTolerance);
  const bool ok_seq = msoa <= maos * (1 + kTrendTolerance);
  std::ostringstream d;
  d.precision(2);
  d << std::fixed << "SFT(1,0.66)=" << sft66 << " vs SFT(1,0.51)=" << sft51 << (ok_sft ? " ok" : " VIOLATED")
    << "; MS-OA=" << msoa << " vs MA-OS=" << maos << (ok_seq ? " ok" : " VIOLATED") << " (tolerance 1%)";
  return {ok_sft && ok_seq ? Verdict::kPass : Verdict::kFail, d.str()};
}

}  // namespace

int main() {
  g_backend = open_default_backend();
  std::cout << "MILP backend: " << (g_backend ? g_backend->name() : std::string("none")) << "\n";

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 mode-count identities", mode_counts},
      {"2 evaluator/MIP feasibility", evaluator_mip_feasibility},
      {"3 exactness triangle", exactness_triangle},
      {"4 two-machine closed form", two_machine_identity},
      {"5 two-machine fixed-sequence DP", two_machine_dp},
      {"6 two-job solver", two_job_solver},
      {"7 heuristic sandwich", heuristic_sandwich},
      {"8 insertion scaling", insertion_scaling},
      {"9 generator determinism and ranges", generator},
      {"10 directional trend", directional_trend},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = check();
    } catch (const std::exception& e) {
      out = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char* tag = out.verdict == Verdict::kPass ? "PASS" : out.verdict == Verdict::kFail ? "FAIL" : "SKIP";
    failures += out.verdict == Verdict::kFail;
    std::printf("[%s] criterion %s: %s (%.1f s)\n", tag, name.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
