#pragma once

#include "fp/projection.hpp"
#include "fp/types.hpp"

namespace fp {

struct InnerResult {
    Vec x;
    double value = 0.0;
    double residual = 0.0;  // ||P(x + grad) - x||
    int iterations = 0;
    bool converged = false;
};

// Projected gradient ascent with backtracking line search (halving, Armijo
// constant 1e-4). Starts at x0 and never returns a point with a lower
// objective value than its start. The objective may return -inf to veto a
// candidate point. Throws MaxItersError only when `strict` and the residual
// target was missed.
InnerResult projected_gradient_max(const ScalarFn& f, const GradFn& grad,
                                   const ConstraintSet& set, const Vec& x0,
                                   double tol, int max_iters, bool strict = false);

// Golden-section search for the maximizer of a unimodal f on [lo, hi];
// |x - argmax| <= tol on unimodal inputs, boundary argmax supported.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol = 1e-9);

// Row-wise argmax selection; ties break to the lowest column index.
// Returns an N x K 0/1 matrix with exactly one 1 per row.
Mat assignment_argmax(const Mat& scores);

struct OracleResult {
    Vec best_x;
    double best_value = 0.0;
    std::int64_t evaluations = 0;
};

// Exhaustive grid maximization over an axis-aligned box, dimension <= 3.
// Deterministic: ties resolve to the smallest flat index. The sweep is
// parallelized internally with a deterministic reduction.
OracleResult grid_maximize(const ScalarFn& f, const Vec& lower, const Vec& upper,
                           double resolution);

// Grid oracle over a problem's exact objective on explicit bounds.
OracleResult grid_oracle(const FPProblem& problem, double resolution,
                         const Vec& lower, const Vec& upper);

// Exhaustive enumeration of row-one-hot assignments (K^N <= 2^20).
OracleResult enumerate_assignments(int points, int clusters,
                                   const std::function<double(const Mat&)>& value);

// Enumeration oracle over a problem with a discrete-assignment constraint.
OracleResult enumerate_oracle(const FPProblem& problem);

}  // namespace fp
