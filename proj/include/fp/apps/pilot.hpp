#pragma once

#include <vector>

#include "fp/apps/instances.hpp"
#include "fp/matrix_transforms.hpp"
#include "fp/rng.hpp"
#include "fp/types.hpp"

namespace fp {

// Multicell pilot design against pilot contamination: maximize
//   sum_i Tr( P_ii S_i^H D_i^{-1} S_i P_ii ),  D_i = sigma^2 I + sum_j S_j P_ij S_j^H
// subject to per-pilot power ||s_ik||^2 <= rho. One complex block per pilot
// vector, solved by the structured matrix-transform driver.
struct PilotResult {
    std::vector<CMat> pilots;  // pilots[i] is tau x K
    double objective = 0.0;
    SolverTrace trace;
};

MatrixRatioProblem build_pilot_problem(const NetworkInstance& net);

double pilot_objective(const NetworkInstance& net, const std::vector<CMat>& S);

// Sum MMSE channel-estimation error over in-cell users, N * sum_ik
// (beta_iik - beta_iik^2 s_ik^H D_i^{-1} s_ik); affine in the pilot objective.
double channel_estimation_mse(const NetworkInstance& net, const std::vector<CMat>& S);

// tau orthogonal full-power pilots; each cell draws a random subset of K.
std::vector<CMat> orthogonal_pilots(const NetworkInstance& net, CounterRng& rng);
// Random directions at full per-pilot power.
std::vector<CMat> random_pilots(const NetworkInstance& net, CounterRng& rng);

// Orthogonal pilots plus a seeded relative 1e-4 perturbation, projected back
// to the power ball. A shared orthonormal pilot set keeps every received
// covariance diagonal in that basis, which makes the exact orthogonal
// configuration a stationary ray set of the iteration; the perturbation
// breaks that symmetry.
BlockVec fpp_start(const NetworkInstance& net);

// Initialized from fpp_start; config.variant selects the matrix transform
// (basic / nonhomogeneous / extrapolated).
PilotResult solve_pilot_fpp(const NetworkInstance& net, const SolverConfig& config = {});

BlockVec pilots_to_blocks(const NetworkInstance& net, const std::vector<CMat>& S);
std::vector<CMat> blocks_to_pilots(const NetworkInstance& net, const BlockVec& blocks);

}  // namespace fp
