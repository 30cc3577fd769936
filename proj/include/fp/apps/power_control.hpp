#pragma once

#include "fp/apps/instances.hpp"
#include "fp/rng.hpp"
#include "fp/types.hpp"

namespace fp {

struct PowerControlResult {
    Vec powers;
    double sum_rate = 0.0;
    SolverTrace trace;
};

Vec sinr_values(const NetworkInstance& net, const Vec& p);

// sum_i w_i ln(1 + SINR_i), natural log.
double weighted_sum_rate(const NetworkInstance& net, const Vec& p);

// Closed-form power control: Lagrangian dual transform for the logarithm,
// quadratic transform for the SINR ratio, every update in closed form.
PowerControlResult solve_power_control(const NetworkInstance& net,
                                       const SolverConfig& config = {});

// Relative residual of the stationarity map p_i = y_i^2 w_i (1+G_i) g_ii /
// (sum_j y_j^2 g_ji)^2 over interior links, i.e. those with
// margin * P < p_i < (1 - margin) * P. Zero for a converged interior
// solution; links collapsing to zero or pinned at the cap are boundary
// solutions and are skipped.
double power_fixed_point_residual(const NetworkInstance& net, const Vec& p,
                                  double interior_margin = 1e-8);

// Log-ratio problem over the box [0, P]^K for the generic drivers and oracles.
FPProblem build_power_logratio_problem(const NetworkInstance& net);

double full_power_rate(const NetworkInstance& net);
double random_power_rate(const NetworkInstance& net, CounterRng& rng);

}  // namespace fp
