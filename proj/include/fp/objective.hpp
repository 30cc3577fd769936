#pragma once

#include "fp/types.hpp"

namespace fp {

// Numerator/denominator values of every ratio at x. Throws
// DegenerateDenominator if any B_i(x) < 1e-12.
void evaluate_ratios(const FPProblem& problem, const Vec& x, Vec& A, Vec& B);

// Exact objective of the original problem at x, always in the maximize sense
// (sum_min evaluates to the negated sum of ratios). Never the surrogate.
double evaluate_objective(const FPProblem& problem, const Vec& x);

// Samples the feasible set and reports violated sign assumptions, curvature
// tags inconsistent with sampled second differences, nonpositive weights, and
// outer functions whose declared monotonicity or concavity fails on a grid.
Diagnostics validate_problem(const FPProblem& problem, int samples, std::uint64_t seed);

}  // namespace fp
