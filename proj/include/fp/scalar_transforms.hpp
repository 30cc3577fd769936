#pragma once

#include <optional>
#include <utility>

#include "fp/objective.hpp"
#include "fp/projection.hpp"
#include "fp/types.hpp"

namespace fp {

// Auxiliary variables of the scalar transforms. y holds the quadratic
// transform auxiliaries, y_tilde the inverse-transform ones; gamma is owned
// here so the unified drivers can carry ratio-moving auxiliaries alongside.
struct AuxiliaryState {
    Vec y;
    Vec y_tilde;
    Vec gamma;
    double dinkelbach_y = 0.0;

    double stacked_norm() const {
        double s = y.squaredNorm() + y_tilde.squaredNorm() + gamma.squaredNorm();
        return std::sqrt(s);
    }
};

// Closed-form optimal auxiliaries for frozen ratio values:
//   quadratic:          y_i = sqrt(A_i) / B_i          (A_i >= 0, B_i > 0)
//   inverse_quadratic:  y_i = sqrt(B_i) / A_i          (A_i > 0,  B_i > 0)
//   am_gm:              y_i = 1 / (2 A_i B_i)          (A_i > 0,  B_i > 0)
Vec update_auxiliaries(TransformKind kind, const Vec& A, const Vec& B);

// Surrogate objective at frozen auxiliaries, in the maximize sense. Equals
// the true (maximize-sense) objective when aux = update_auxiliaries(A, B).
// The inverse transform returns -infinity when a bracket
// 2 y sqrt(B) - y^2 A falls below 1e-12.
double surrogate_value(TransformKind kind, const Vec& A, const Vec& B,
                       const Vec& aux, const Vec& weights);

// Inner solver handle: maximize f over the set starting from x0.
using InnerSolverFn =
    std::function<Vec(const ScalarFn& f, const GradFn& grad, const ConstraintSet& set,
                      const Vec& x0, const SolverConfig& config)>;

// Projected gradient ascent with backtracking; the default inner step.
InnerSolverFn default_inner_solver();

// Dinkelbach's method for a single-ratio problem: alternates the parametric
// subproblem max A(x) - y B(x) with y = A(x)/B(x). Globally optimal under the
// concave-convex condition (a warning is recorded otherwise).
SolveResult dinkelbach_solve(const FPProblem& problem, const InnerSolverFn& inner,
                             const SolverConfig& config,
                             std::optional<Vec> start = std::nullopt);

// Generalized Dinkelbach for max-min-ratios. The nonsmooth inner subproblem
// max_x min_i (w_i A_i - y B_i) is solved through a log-sum-exp smoothing
// continuation handed to the inner solver.
SolveResult maxmin_dinkelbach_solve(const FPProblem& problem,
                                    const InnerSolverFn& inner,
                                    const SolverConfig& config,
                                    std::optional<Vec> start = std::nullopt);

// Unified quadratic transform driver for single / sum_max / sum_min /
// log_ratio / sum_of_functions problems. Ratios inside nondecreasing outer functions use
// the quadratic transform; ratios inside nonincreasing ones use the inverse
// quadratic transform (or the AM-GM transform for pure sum_min problems when
// config.variant == am_gm). All auxiliaries are refreshed jointly from the
// current x before each inner x step.
SolveResult unified_qt_solve(const FPProblem& problem, const InnerSolverFn& inner,
                             const SolverConfig& config,
                             std::optional<Vec> start = std::nullopt);

// Variable lift z = 1/B(x), q = x/B(x). The lifted objective keeps only the
// numerator; the denominator moves to the constraint z B(q/z) <= 1. Shipped
// as evaluators plus the exact recovery map x = q/z; building the lifted
// feasible sets in general is out of scope.
struct LiftedSingleRatio {
    std::function<double(double z, const Vec& q)> objective;
    std::function<double(double z, const Vec& q)> constraint;
    std::function<std::pair<double, Vec>(const Vec& x)> lift;
    std::function<Vec(double z, const Vec& q)> recover;
};

LiftedSingleRatio charnes_cooper_lift(const FPProblem& problem);

}  // namespace fp
