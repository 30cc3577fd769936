#pragma once

#include <optional>

#include "fp/scalar_transforms.hpp"
#include "fp/types.hpp"

namespace fp {

// Auxiliaries of the Lagrangian dual transform, one gamma per log-ratio term.
struct LdtState {
    Vec gamma;
};

// gamma_i = A_i / B_i; requires A_i >= 0 and B_i above the degeneracy floor.
Vec ldt_gamma_update(const Vec& A, const Vec& B);

// Dual-transformed objective at frozen gamma:
//   sum_i w_i ( ln(1 + gamma_i) + (1 + gamma_i) A_i / (A_i + B_i) - gamma_i ).
// The ratio moves outside the logarithm and the numerator joins the
// denominator. Equal to sum_i w_i ln(1 + A_i/B_i) at gamma = A/B, and a lower
// bound for every other nonnegative gamma.
double ldt_objective(const Vec& x, const Vec& gamma, const FPProblem& problem);

// Sum-of-log-ratios driver: a gamma step, then quadratic-transform auxiliary
// and x steps on the weighted sum-of-ratios subproblem (config.inner_sweeps
// inner (y, x) sweeps per gamma refresh, default one).
SolveResult logratio_solve(const FPProblem& problem, const InnerSolverFn& inner,
                           const SolverConfig& config,
                           std::optional<Vec> start = std::nullopt);

}  // namespace fp
