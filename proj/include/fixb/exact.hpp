#pragma once

// Polynomial exact algorithms for two tractable cases: two jobs with any
// number of machines, and two machines with a fixed job sequence.

#include <cstdint>

#include "fixb/core.hpp"

namespace fixb {

struct TwoJobGraphStats {
  std::int64_t nodes = 0;  // including source and sink
  std::int64_t arcs = 0;
  std::int64_t labels = 0;  // non-dominated labels kept, summed over both orders
};

struct TwoJobResult {
  Solution solution;
  TwoJobGraphStats stats;
};

// Shortest path through the layered corner graph of each job order.
//
// Layer k (one per machine) holds a node per (split of the first job at
// boundary k, split of the second job at boundary k-1), i.e. the possible
// south-east corners of the machine-k obstacle in the two-job grid. Every
// node of layer k connects to every node of layer k+1. A path label carries
//   X = completion of the first job on machine k,
//   T = start of the second job on machine k,
// and the arc to layer k+1 maps (X, T) to
//   (X + pA(k+1), max(T + pB(k), X + pA(k+1))).
// The sink adds the second job's last workload. Labels are pruned by Pareto
// dominance on (X, T), which is exact because both updates are monotone.
TwoJobResult solve_two_jobs(const Instance& inst);

// Node and arc counts of the corner graph of one job order:
// sum_k (n_k + 1)(n_{k-1} + 1) + 2 nodes, with n_0 = n_m = 0 in 1-based terms.
TwoJobGraphStats two_job_graph_size(const Layout& layout);

// Dynamic program over positions for m = 2:
//   D[0][l] = p1(l),  D[j][l] = min_l' D[j-1][l'] + max(p1_j(l), p2_{j-1}(l')),
//   C = min_l D[n-1][l] + p2_{n-1}(l).
// Ties resolve to the smallest mode index.
Solution solve_two_machine_fixed_sequence(const Instance& inst, const Sequence& seq);

}  // namespace fixb
