#pragma once

#include "fp/apps/instances.hpp"
#include "fp/types.hpp"

namespace fp {

// Normalized-cut clustering by alternating a closed-form auxiliary update
// with a row-argmax assignment step (the matrix-quadratic-transform reading
// of the ncut ratio). Monotone nonincreasing in ncut; stops when the
// assignment stabilizes.
struct NcutResult {
    Mat assignment;  // N x K one-hot rows
    double ncut = 0.0;
    SolverTrace trace;
    int empty_cluster_restarts = 0;
};

// sum_k cut(V_k) / vol(V_k); empty clusters contribute zero.
double ncut_value(const GraphInstance& graph, const Mat& assignment);

NcutResult solve_ncut_fpc(const GraphInstance& graph, const Mat& init,
                          const SolverConfig& config = {});

// Sum-of-ratios association form over the flattened assignment, for the
// enumeration oracle: ncut = K - sum_k (x_k' W x_k) / (d' x_k).
FPProblem build_ncut_problem(const GraphInstance& graph);

// Two planted blocks with Gaussian-kernel similarities (approximate intra /
// inter levels set by the feature geometry); W is positive definite.
GraphInstance planted_two_block(int points, double intra, double inter,
                                std::uint64_t seed);

}  // namespace fp
