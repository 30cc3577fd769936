#pragma once

#include <vector>

#include "fp/types.hpp"

namespace fp {

// Hard-margin linear SVM as a max-min-ratios program over (w, b): the margin
// min_i t_i (w.x_i + b) / ||w|| is maximized by the generalized Dinkelbach
// iteration. Requires linearly separable labels.
struct SvmResult {
    Vec w;           // unit normal of the decision boundary
    double bias = 0.0;
    double margin = 0.0;
    SolverTrace trace;
};

// min_i t_i (w.x_i + b) / ||w||.
double svm_margin(const Mat& points, const std::vector<int>& labels, const Vec& w,
                  double bias);

// Throws NotSeparable when the capped perceptron pre-check cannot split the
// labels with a positive margin.
SvmResult solve_svm_margin(const Mat& points, const std::vector<int>& labels,
                           const SolverConfig& config = {});

FPProblem build_svm_problem(const Mat& points, const std::vector<int>& labels);

}  // namespace fp
