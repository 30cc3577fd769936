#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fp/errors.hpp"

namespace fp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

using ScalarFn = std::function<double(const Vec&)>;
using GradFn = std::function<Vec(const Vec&)>;

// ---------------------------------------------------------------------------
// Ratio terms
// ---------------------------------------------------------------------------

enum class Curvature {
    concave_convex,  // concave numerator over convex denominator (maximization)
    convex_concave,  // convex numerator over concave denominator (minimization)
    generic,
};

// One ratio term A(x)/B(x) with analytic gradients. The validator samples the
// sign assumptions (A >= 0, B > 0 on the feasible set) rather than proving them.
struct RatioSpec {
    ScalarFn numerator;
    ScalarFn denominator;
    GradFn grad_numerator;
    GradFn grad_denominator;
    Curvature curvature = Curvature::generic;
};

// ---------------------------------------------------------------------------
// Outer functions for sum-of-functions-of-ratio objectives
// ---------------------------------------------------------------------------

enum class OuterKind {
    identity,        // f(r) = r
    log1p,           // f(r) = ln(1 + r)
    log_one_minus,   // f(r) = ln(1 - r), r < 1
    negated_identity,// f(r) = -r
    custom,
};

enum class Monotonicity { nondecreasing, nonincreasing };

struct OuterFunction {
    OuterKind kind = OuterKind::identity;
    Monotonicity monotonicity = Monotonicity::nondecreasing;
    std::function<double(double)> evaluator;
    std::function<double(double)> derivative;

    double operator()(double r) const;
    double deriv(double r) const;

    static OuterFunction identity();
    static OuterFunction log1p();
    static OuterFunction log_one_minus();
    static OuterFunction negated_identity();
    static OuterFunction custom(std::function<double(double)> f,
                                std::function<double(double)> df,
                                Monotonicity mono);
};

// ---------------------------------------------------------------------------
// Constraint sets
// ---------------------------------------------------------------------------

enum class SetKind {
    unconstrained,
    box,
    euclidean_ball,
    per_column_ball,
    discrete_assignment,
    simplex,
};

// Feasible-set descriptor. Matrix-shaped sets (per-column ball, assignment)
// address a rows x cols matrix stored column-major in a flat vector.
struct ConstraintSet {
    SetKind kind = SetKind::unconstrained;
    Vec lower, upper;     // box
    double radius = 0.0;  // euclidean_ball, per_column_ball
    int rows = 0, cols = 0;

    static ConstraintSet none();
    static ConstraintSet box_set(Vec lower, Vec upper);
    static ConstraintSet ball(double radius);
    static ConstraintSet per_column(double radius, int rows, int cols);
    static ConstraintSet assignment(int points, int clusters);
    static ConstraintSet simplex_set(int dim);
};

// ---------------------------------------------------------------------------
// Problems
// ---------------------------------------------------------------------------

enum class ProblemKind {
    single,            // maximize A/B
    max_min,           // maximize min_i w_i A_i/B_i
    sum_max,           // maximize sum_i w_i A_i/B_i
    sum_min,           // minimize  sum_i w_i A_i/B_i (objective stored negated)
    sum_of_functions,  // maximize sum_i w_i f_i(A_i/B_i)
    log_ratio,         // maximize sum_i w_i ln(1 + A_i/B_i)
    matrix,            // held by MatrixRatioProblem; not evaluable here
};

// Scalar fractional program. Objectives are always reported in the maximize
// sense: the sum_min kind evaluates to -sum w_i A_i/B_i so that every
// surrogate in the toolkit minorizes the same quantity.
struct FPProblem {
    ProblemKind kind = ProblemKind::single;
    std::vector<RatioSpec> ratios;
    std::vector<OuterFunction> outer;  // empty, or one per ratio
    Vec weights;                       // strictly positive, one per ratio
    ConstraintSet constraint;
    int dimension = 0;

    int term_count() const { return static_cast<int>(ratios.size()); }
    void check_well_formed() const;
};

// ---------------------------------------------------------------------------
// Solver configuration and traces
// ---------------------------------------------------------------------------

enum class TransformKind {
    dinkelbach,
    quadratic,
    inverse_quadratic,
    am_gm,
    unified,
    lagrangian_dual,
    matrix_basic,
    matrix_nonhomogeneous,
    matrix_extrapolated,
};

std::string to_string(TransformKind kind);

struct SolverConfig {
    int max_iters = 500;
    double obj_tol = 1e-8;       // absolute change in objective between iterations
    double inner_tol = 1e-9;     // projected-gradient residual for inner solves
    int inner_max_iters = 2000;
    int inner_sweeps = 1;        // inner auxiliary/x sweeps per outer cycle
    std::uint64_t seed = 1;
    TransformKind variant = TransformKind::quadratic;

    void check() const;  // max_iters >= 1, tolerances strictly positive
};

enum class SolveStatus { converged, max_iters, degenerate };

enum class Direction { maximize, minimize };

struct TraceRecord {
    int iter = 0;
    double objective = 0.0;
    double surrogate = 0.0;
    double aux_norm = 0.0;
    double elapsed_ms = 0.0;
};

struct SolverTrace {
    std::vector<TraceRecord> records;
    SolveStatus status = SolveStatus::max_iters;
    Direction direction = Direction::maximize;
    TransformKind variant = TransformKind::quadratic;
    std::vector<std::string> warnings;

    int iterations() const { return static_cast<int>(records.size()); }
    double final_objective() const;
    // Largest adverse per-step objective change, 0 if none.
    double worst_violation() const;
    bool monotone(double slack = 1e-10) const;
    void warn(std::string message) { warnings.push_back(std::move(message)); }
};

// Result bundle shared by the scalar drivers.
struct SolveResult {
    Vec x;
    double value = 0.0;
    SolverTrace trace;
};

// ---------------------------------------------------------------------------
// Validation diagnostics
// ---------------------------------------------------------------------------

struct Diagnostics {
    std::vector<std::string> violations;  // hard assumption failures at samples
    std::vector<std::string> warnings;    // curvature / monotonicity mismatches

    bool clean() const { return violations.empty() && warnings.empty(); }
    std::string str() const;
};

}  // namespace fp
