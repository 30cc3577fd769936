#pragma once

#include "fp/types.hpp"

namespace fp {

// Age-of-information rate control for K prioritized sources served at rate mu.
// With rho_k = lambda_k / mu and rho_hat_k = sum_{i<k} rho_i, the per-source
// average age is (rho_hat^2 + 3 rho_hat + 1) / (mu (1 + rho_hat))
//              + (rho_hat + 1)^2 / (mu rho_k),
// a sum-of-ratios minimization over 0 <= lambda_k <= mu.
struct AoiResult {
    Vec rates;
    double sum_aoi = 0.0;
    SolverTrace trace;
};

double sum_aoi_value(int sources, double mu, const Vec& lambda);

FPProblem build_aoi_problem(int sources, double mu);

// Inverse quadratic transform by default; config.variant == am_gm selects the
// AM-GM surrogate. The trace records the (minimized) sum of ages.
AoiResult solve_aoi(int sources, double mu, const SolverConfig& config = {});

// Common arrival rate chosen by one-dimensional search; returns its sum-AoI.
double equal_rate_baseline(int sources, double mu);
// Every source transmitting at lambda = mu.
double max_rate_baseline(int sources, double mu);

}  // namespace fp
